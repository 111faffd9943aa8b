#include "dcmd/boundary.hpp"

#include <string>

#include "dcmd/errors.hpp"

namespace dcmd {

BcSpec::BcSpec() {
  for (auto& per_segment : conditions_) per_segment.fill(BoundaryCondition::neumann());
}

BcSpec& BcSpec::set(Segment s, Component c, BoundaryCondition bc) {
  conditions_[segment_index(s)][static_cast<std::size_t>(c)] = bc;
  return *this;
}

BcSpec& BcSpec::set(Segment s, BoundaryCondition bc) {
  set(s, Component::Feed, bc);
  return set(s, Component::Permeate, bc);
}

BcSpec& BcSpec::set_signal(Segment s, BoundarySignal signal) {
  signals_[segment_index(s)] = std::move(signal);
  return *this;
}

BcSpec& BcSpec::set_signal(BoundarySignal signal) {
  const auto s = signal.segment();
  return set_signal(s, std::move(signal));
}

const BoundaryCondition& BcSpec::at(Segment s, Component c) const {
  return conditions_[segment_index(s)][static_cast<std::size_t>(c)];
}

const std::optional<BoundarySignal>& BcSpec::signal(Segment s) const {
  return signals_[segment_index(s)];
}

std::array<bool, 4> BcSpec::dirichlet_mask(Component c) const {
  std::array<bool, 4> mask{};
  for (auto s : kAllSegments) mask[segment_index(s)] = is_dirichlet(s, c);
  return mask;
}

void BcSpec::validate() const {
  for (auto s : kAllSegments) {
    for (auto c : {Component::Feed, Component::Permeate}) {
      if (at(s, c).kind == BcKind::RobinCoupled && s != Segment::Gamma4) {
        throw ValidationError(std::string("membrane coupling requested on ") + segment_name(s) +
                              "; it is only defined on gamma4");
      }
    }
    const auto& sig = signal(s);
    if (sig && sig->segment() != s) {
      throw ValidationError(std::string("signal for ") + segment_name(sig->segment()) +
                            " attached to " + segment_name(s));
    }
  }
}

BoundaryData BoundaryData::from_signals(const Grid& grid, const BcSpec& bc, double t) {
  BoundaryData data;
  for (auto s : kAllSegments) {
    if (const auto& sig = bc.signal(s)) data[s] = sig->sample(grid, t);
  }
  return data;
}

}  // namespace dcmd
