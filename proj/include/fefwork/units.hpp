#pragma once

#include <cmath>

#include "fefwork/qstate.hpp"

namespace fefwork {

/// k_B T of the heat bath. Any positive finite energy unit.
struct TemperatureScale {
  double kbt = 1.0;

  explicit TemperatureScale(double kbtValue = 1.0) : kbt(kbtValue) {
    if (!(kbtValue > 0.0) || !std::isfinite(kbtValue))
      throw ValidationError("TemperatureScale: kBT must be positive and finite");
  }
};

/// Energy kept as a multiple of k_B T together with the scale, so rescaling
/// the temperature never re-derives anything.
struct Energy {
  double inKbt = 0.0;
  double kbt = 1.0;

  static Energy fromKbt(double units, const TemperatureScale& t) { return {units, t.kbt}; }
  double value() const { return inKbt * kbt; }

  Energy operator+(const Energy& o) const { return {inKbt + o.inKbt * (o.kbt / kbt), kbt}; }
  Energy operator-() const { return {-inKbt, kbt}; }
};

}  // namespace fefwork
