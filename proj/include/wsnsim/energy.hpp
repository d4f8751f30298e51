#pragma once

namespace wsnsim {

/// Radio constants and battery defaults. Defaults are the standard
/// first-order radio model parameter set for this kind of study.
struct EnergyParams {
  double e_elec = 50e-9;        // J/bit, electronics cost on both ends
  double eps_fs = 10e-12;       // J/bit/m^2, amplifier below d0
  double eps_mp = 0.0013e-12;   // J/bit/m^4, amplifier at and beyond d0
  double d0 = 85.0;             // m, amplifier model threshold
  double data_rate = 250.0e3;   // bit/s
  double initial_energy = 0.5;  // J per node
  double e_da = 0.0;            // J/bit, data aggregation cost at the CH

  friend bool operator==(const EnergyParams&, const EnergyParams&) = default;
};

/// l*e_elec + l*eps_fs*d^2 below d0, l*e_elec + l*eps_mp*d^4 from d0 up.
double tx_energy(double bits, double dist, const EnergyParams& p);

/// l*e_elec.
double rx_energy(double bits, const EnergyParams& p);

/// l / data_rate.
double tx_time(double bits, const EnergyParams& p);

enum class DebitStatus { Ok, Died };

/// Per-node battery. The consumed-energy ledger is the primary state and the
/// residual is derived from it, so initial == consumed + residual holds
/// bit-exactly at all times; a refused debit drains the remainder into the
/// ledger and kills the node.
class Battery {
 public:
  Battery() = default;
  explicit Battery(double initial);

  double residual() const { return initial_ - consumed_; }
  double consumed() const { return consumed_; }
  double initial() const { return initial_; }
  bool alive() const { return alive_; }

  DebitStatus debit(double amount);

 private:
  double initial_ = 0.0;
  double consumed_ = 0.0;
  bool alive_ = true;
};

}  // namespace wsnsim
