#pragma once

#include <optional>
#include <string>
#include <vector>

#include "besovlab/besov.hpp"
#include "besovlab/distributions.hpp"
#include "besovlab/schedules.hpp"

namespace besovlab {

enum class Decision { MemberAS, NotMemberAS, SufficientOnlyMember, NotCovered };

struct Verdict {
  Decision decision = Decision::NotCovered;
  std::string case_id;
  std::optional<double> threshold;       // critical s where one exists
  std::string reason;                    // always set for NotCovered
  std::vector<std::string> assumptions;  // assumptions that were checked and held
};

std::string decision_name(Decision d);
// SufficientOnlyMember is a membership statement too; only its converse is missing.
bool counts_as_member(Decision d);
inline bool is_covered(Decision d) { return d != Decision::NotCovered; }

// tau_j^2 ~ 2^{-alpha j}, pi_j ~ 2^{-beta j}.
Verdict classify_simple(const SlabDistribution& slab, double alpha, double beta,
                        const BesovParams& bp, double r);

// Arbitrary schedules from the c j^g 2^{-e j} family; dispatches on the growth of 2^j pi_j.
Verdict classify_general(const SlabDistribution& slab, const LevelSchedule& tau,
                         const LevelSchedule& pi, const BesovParams& bp, double r);

// p = infinity, tau_j^2 = j^gamma 2^{-alpha j}, Gaussian or Laplace slab only.
Verdict classify_three_param(const SlabDistribution& slab, double alpha, double beta,
                             double gamma, double s, ExtendedIndex q, double r);

// Finite-sample prior truncated at floor(log2 n) - 1 with n^{-1/2} scaling, as n grows.
Verdict classify_regression(const SlabDistribution& slab, const LevelSchedule& tau,
                            const LevelSchedule& pi, const BesovParams& bp, double r);

// pi_j = 1 for all j.
Verdict no_spike_condition(const SlabDistribution& slab, const LevelSchedule& tau,
                           const BesovParams& bp, double r);

}  // namespace besovlab
