#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fockgdo/core/fock_state.hpp"
#include "fockgdo/states/states.hpp"
#include "fockgdo/verify/report.hpp"

namespace fockgdo::verify {

struct Tolerances {
  double residual = 1e-10;
  double leak = 1e-10;
  double oracle = 1e-12;
};

enum class FamilyKind { finite, shifted, general, two_photon, other };

struct FamilyInfo {
  std::string name;
  FamilyKind kind;
  std::vector<std::string> required;  // parameter names
  std::vector<std::string> optional;
  std::string description;
  bool suite = true;  // false: reachable through build_state only
};

/// Registered families in a fixed order; the first 15 have verification suites.
const std::vector<FamilyInfo>& family_registry();
/// Resolves aliases (ecs, ocs -> eocs with parity set). Throws InputError for unknown names.
const FamilyInfo& family_info(const std::string& name);
std::string canonical_family(const std::string& name);

/// Applies alias defaults (ecs/ocs parity) and checks that exactly the
/// family's parameters are present. Parameter ranges are validated by the constructors.
states::StateParams resolve_params(const std::string& family, states::StateParams p);

/// Default truncation: M+8 for finite families, otherwise the smallest
/// 64 * 2^k (up to 1024) whose dropped tail mass is below 1e-26.
std::size_t default_dim(const std::string& family, const states::StateParams& p);

FockState build_state(const std::string& family, const states::StateParams& p, std::size_t dim);

/// Parameters as an ordered JSON object (complex values as {re, im}).
json params_to_json(const states::StateParams& p);
states::StateParams params_from_json(const json& j);

VerificationReport run_family_suite(const std::string& family, const states::StateParams& params, std::size_t dim,
                                    const Tolerances& tol = {});

/// Structure function rows for the structure-fn command: derived F next to
/// the printed form of the family (with_paper=false leaves printed zero).
VerificationReport structure_table(const std::string& family, const states::StateParams& params, std::size_t dim,
                                   bool with_paper);

}  // namespace fockgdo::verify
