#include "wsnsim/energy.hpp"

#include <stdexcept>

namespace wsnsim {

double tx_energy(double bits, double dist, const EnergyParams& p) {
  if (bits < 0.0) throw std::invalid_argument("tx_energy: negative bit count");
  if (dist < 0.0) throw std::invalid_argument("tx_energy: negative distance");
  const double d2 = dist * dist;
  if (dist < p.d0) return bits * p.e_elec + bits * p.eps_fs * d2;
  return bits * p.e_elec + bits * p.eps_mp * d2 * d2;
}

double rx_energy(double bits, const EnergyParams& p) {
  if (bits < 0.0) throw std::invalid_argument("rx_energy: negative bit count");
  return bits * p.e_elec;
}

double tx_time(double bits, const EnergyParams& p) {
  if (bits < 0.0) throw std::invalid_argument("tx_time: negative bit count");
  return bits / p.data_rate;
}

Battery::Battery(double initial) : initial_(initial) {
  if (initial < 0.0) throw std::invalid_argument("Battery: negative initial energy");
}

DebitStatus Battery::debit(double amount) {
  if (amount < 0.0) throw std::invalid_argument("Battery::debit: negative amount");
  if (!alive_) throw std::logic_error("Battery::debit: node is already dead");
  const double res = residual();
  if (amount < res) {
    consumed_ += amount;
    if (consumed_ > initial_) consumed_ = initial_;  // residual never goes negative
    return DebitStatus::Ok;
  }
  if (amount == res) {
    consumed_ = initial_;  // exact spend allowed
    return DebitStatus::Ok;
  }
  consumed_ = initial_;  // the refused action drains the remainder
  alive_ = false;
  return DebitStatus::Died;
}

}  // namespace wsnsim
