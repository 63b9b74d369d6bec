#pragma once

#include <string>

#include "confound/registry.hpp"

namespace testing {

inline const confound::Registry& registry() {
  static const confound::Registry r = confound::builtin_registry();
  return r;
}

inline const confound::RegistryEntry& entry(const std::string& name) {
  const confound::RegistryEntry* e = registry().find(name);
  if (!e) throw std::runtime_error("no fixture " + name);
  return *e;
}

inline const confound::Dag& dag(const std::string& name) { return entry(name).dag; }
inline const confound::DiscreteModel& model(const std::string& name) { return *entry(name).model; }

}  // namespace testing

namespace testing {

// mpq_class(n, d) is not reduced on construction.
inline confound::Rational q(long n, long d) {
  confound::Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace testing
