#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "wsnsim/geometry.hpp"

namespace wsnsim {

/// Packed in-network address: high octet is the quantized x coordinate,
/// low octet the quantized y coordinate (8 bits per axis over the area side).
using NodeId = std::uint16_t;

inline constexpr int kIntraPacketOctets = 52;
inline constexpr int kIntraPacketBits = kIntraPacketOctets * 8;  // 416
inline constexpr int kInterHeaderOctets = 6;
inline constexpr int kIntraPayloadOctets = 44;

int intra_packet_bits();
long inter_packet_bits(int member_count);

NodeId encode_node_id(Point p, double area_side);
/// Centre of the quantization cell the id names.
Point decode_node_id(NodeId id, double area_side);

/// One sensed reading from a plain node to its CH. 52 octets on the wire:
/// src(2) cls_id(2) ch_id(2) seq(2) payload(44), big-endian fields.
struct IntraPacket {
  NodeId src = 0;
  std::uint16_t cls_id = 0;
  NodeId ch_id = 0;
  std::uint16_t seq = 0;
  std::array<std::uint8_t, kIntraPayloadOctets> payload{};  // zero-filled in simulation

  friend bool operator==(const IntraPacket&, const IntraPacket&) = default;
};

/// Aggregated cluster report to the target sink. 6 fixed header octets
/// cls_id(2) ch_id(2) trg_sink_id(2) followed by one 52-octet member image
/// per contributing node.
struct InterPacket {
  std::uint16_t cls_id = 0;
  NodeId ch_id = 0;
  NodeId trg_sink_id = 0;
  std::vector<IntraPacket> members;

  friend bool operator==(const InterPacket&, const InterPacket&) = default;
};

std::vector<std::uint8_t> serialize(const IntraPacket& pkt);
std::vector<std::uint8_t> serialize(const InterPacket& pkt);
IntraPacket deserialize_intra(std::span<const std::uint8_t> octets);
InterPacket deserialize_inter(std::span<const std::uint8_t> octets);

}  // namespace wsnsim
