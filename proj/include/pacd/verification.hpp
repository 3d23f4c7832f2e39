#pragma once

// Exact agreement checks between closed forms and the enumeration oracle.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pacd/attachment.hpp"
#include "pacd/history_oracle.hpp"
#include "pacd/likelihood.hpp"

namespace pacd {

struct VerificationResult {
  std::uint64_t checked = 0;
  std::uint64_t mismatches = 0;
  std::vector<std::string> failures;  // first few, for diagnostics

  bool ok() const noexcept { return checked > 0 && mismatches == 0; }

  void record(bool pass, const std::string& what) {
    ++checked;
    if (pass) return;
    ++mismatches;
    if (failures.size() < 10) failures.push_back(what);
  }
};

using ShiftPair = std::pair<double, double>;

/// Encoding-induced law against the attachment law at every reachable state
/// whose next step (t, i) has t <= max_t.
inline VerificationResult verify_encoding(std::uint32_t max_t, const std::vector<std::uint32_t>& ms,
                                          const std::vector<double>& deltas) {
  if (max_t < 3) throw invalid_config("max_t must be >= 3");
  VerificationResult out;
  for (std::uint32_t m : ms) {
    for (double d : deltas) {
      if (!(d > -static_cast<double>(m))) throw invalid_config("delta must be > -m");
      const Rational exact = exact_rational(d);
      const std::uint64_t last = static_cast<std::uint64_t>(max_t - 2) * m;
      for (std::uint64_t k = 0; k < last; ++k) {
        for_each_state(GrowthState(m), k, DeltaSchedule::constant(d, max_t), [&](const GrowthState& st, const Rational&) {
          out.record(encoding_induced_law(st, d) == attachment_distribution<Rational>(st, exact),
                     "m=" + std::to_string(m) + " delta=" + std::to_string(d) + " t=" + std::to_string(st.next_t()) +
                         " i=" + std::to_string(st.next_i()));
        });
      }
    }
  }
  return out;
}

/// Closed-form L against the oracle ratio for every prefix on M vertices and
/// every snapshot on n vertices. Also checks that the ratio has null mean one
/// for each prefix.
inline VerificationResult verify_lr(std::uint32_t n, std::uint32_t m, std::uint32_t big_m, const ShiftPair& shifts) {
  const auto [d, dp] = shifts;
  if (big_m < 2 || big_m >= n) throw invalid_config("require 2 <= M < n");
  VerificationResult out;
  const std::string tag = "n=" + std::to_string(n) + " m=" + std::to_string(m) + " M=" + std::to_string(big_m) +
                          " delta=" + std::to_string(d) + " delta'=" + std::to_string(dp);
  for (const auto& pre : enumerate_histories(big_m, m, DeltaSchedule::constant(d, big_m))) {
    const LawPair laws = one_step_laws(pre.history, n, d, dp);
    Rational expectation(0);
    for (const auto& [key, entry] : laws.null_law) {
      const auto closed = likelihood_ratio<Rational>(entry.representative, big_m, exact_rational(d), exact_rational(dp));
      out.record(closed.l == ratio_from_laws(laws, key), tag);
      expectation += entry.probability * closed.l;
    }
    out.record(expectation == Rational(1), tag + " (null mean)");
  }
  return out;
}

inline void merge_into(VerificationResult& total, const VerificationResult& part) {
  total.checked += part.checked;
  total.mismatches += part.mismatches;
  for (const auto& f : part.failures) {
    if (total.failures.size() < 10) total.failures.push_back(f);
  }
}

}  // namespace pacd
