#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlo/fock.hpp"
#include "qlo/sampling.hpp"

namespace qlo {

// Exhaustive and sampled identity checks. Each returns the number of
// violations and the first one found (in loop order).
struct CheckOutcome {
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

// kms_identity_check over all quadruples drawn from traces.
CheckOutcome kms_exhaustive(const std::vector<Trace>& traces);
// kms_identity_check over random quadruples of length <= max_length.
CheckOutcome kms_sampled(const GraphPtr& g, std::uint64_t seed, std::size_t samples,
                         std::size_t max_length);
// nica_check over all pairs drawn from traces.
CheckOutcome nica_exhaustive(const TruncatedRep& rep, const std::vector<Trace>& traces);
// join(zp, zq) == z join(p, q) on random triples.
CheckOutcome join_translation_sampled(const GraphPtr& g, std::uint64_t seed, std::size_t samples,
                                      std::size_t max_length);

namespace serial {
CheckOutcome kms_exhaustive(const std::vector<Trace>& traces);
CheckOutcome nica_exhaustive(const TruncatedRep& rep, const std::vector<Trace>& traces);
}  // namespace serial

struct InvariantResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  std::size_t samples = 2000;
  // Size caps for the materialised enumerations and truncated representation.
  std::size_t max_enumeration = 200000;
  std::size_t max_rep_dim = 20000;
};

struct VerifyReport {
  std::vector<InvariantResult> results;
  bool all_passed() const;
};

// Every module invariant at the given cutoff; see README for the list.
VerifyReport run_invariant_suite(const GraphPtr& g, const Rational& cutoff,
                                 const VerifyOptions& options = {});

// Largest cutoff k/scale <= limit whose enumeration has at most max_size elements.
Rational cutoff_within_budget(const IndependenceGraph& g, const Rational& limit, std::size_t max_size);

}  // namespace qlo
