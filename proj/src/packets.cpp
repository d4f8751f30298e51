#include "wsnsim/packets.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wsnsim {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
}

std::uint16_t get_u16(std::span<const std::uint8_t> in, std::size_t at) {
  return static_cast<std::uint16_t>((in[at] << 8) | in[at + 1]);
}

std::uint8_t quantize_axis(double v, double area_side) {
  const long q = static_cast<long>(std::floor(v * 256.0 / area_side));
  return static_cast<std::uint8_t>(q > 255 ? 255 : q);
}

}  // namespace

int intra_packet_bits() { return kIntraPacketBits; }

long inter_packet_bits(int member_count) {
  if (member_count < 0) throw std::invalid_argument("inter_packet_bits: negative member count");
  return 8L * kInterHeaderOctets + static_cast<long>(kIntraPacketBits) * member_count;
}

NodeId encode_node_id(Point p, double area_side) {
  if (!(area_side > 0.0)) throw std::invalid_argument("encode_node_id: area_side must be positive");
  if (p.x < 0.0 || p.x > area_side || p.y < 0.0 || p.y > area_side)
    throw std::invalid_argument("encode_node_id: point outside the area");
  return static_cast<NodeId>((quantize_axis(p.x, area_side) << 8) | quantize_axis(p.y, area_side));
}

Point decode_node_id(NodeId id, double area_side) {
  const double cell = area_side / 256.0;
  const double qx = static_cast<double>((id >> 8) & 0xFF);
  const double qy = static_cast<double>(id & 0xFF);
  return {(qx + 0.5) * cell, (qy + 0.5) * cell};
}

std::vector<std::uint8_t> serialize(const IntraPacket& pkt) {
  std::vector<std::uint8_t> out;
  out.reserve(kIntraPacketOctets);
  put_u16(out, pkt.src);
  put_u16(out, pkt.cls_id);
  put_u16(out, pkt.ch_id);
  put_u16(out, pkt.seq);
  out.insert(out.end(), pkt.payload.begin(), pkt.payload.end());
  return out;
}

std::vector<std::uint8_t> serialize(const InterPacket& pkt) {
  std::vector<std::uint8_t> out;
  out.reserve(kInterHeaderOctets + pkt.members.size() * kIntraPacketOctets);
  put_u16(out, pkt.cls_id);
  put_u16(out, pkt.ch_id);
  put_u16(out, pkt.trg_sink_id);
  for (const IntraPacket& m : pkt.members) {
    const auto img = serialize(m);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

IntraPacket deserialize_intra(std::span<const std::uint8_t> octets) {
  if (octets.size() != kIntraPacketOctets)
    throw std::invalid_argument("deserialize_intra: expected 52 octets, got " +
                                std::to_string(octets.size()));
  IntraPacket pkt;
  pkt.src = get_u16(octets, 0);
  pkt.cls_id = get_u16(octets, 2);
  pkt.ch_id = get_u16(octets, 4);
  pkt.seq = get_u16(octets, 6);
  for (int i = 0; i < kIntraPayloadOctets; ++i)
    pkt.payload[static_cast<std::size_t>(i)] = octets[static_cast<std::size_t>(8 + i)];
  return pkt;
}

InterPacket deserialize_inter(std::span<const std::uint8_t> octets) {
  if (octets.size() < kInterHeaderOctets ||
      (octets.size() - kInterHeaderOctets) % kIntraPacketOctets != 0)
    throw std::invalid_argument("deserialize_inter: length " + std::to_string(octets.size()) +
                                " does not match 6 + 52*N octets");
  InterPacket pkt;
  pkt.cls_id = get_u16(octets, 0);
  pkt.ch_id = get_u16(octets, 2);
  pkt.trg_sink_id = get_u16(octets, 4);
  const std::size_t n = (octets.size() - kInterHeaderOctets) / kIntraPacketOctets;
  pkt.members.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    pkt.members.push_back(
        deserialize_intra(octets.subspan(kInterHeaderOctets + i * kIntraPacketOctets,
                                         kIntraPacketOctets)));
  return pkt;
}

}  // namespace wsnsim
