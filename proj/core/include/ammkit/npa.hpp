#pragma once

#include <vector>

#include "ammkit/amm.hpp"

namespace ammkit {

enum class NpaEntryKind { Zero, Normalization, AliceMarginal, BobMarginal, Joint, Unknown };

struct NpaEntry {
  NpaEntryKind kind = NpaEntryKind::Zero;
  int x = -1, a = -1;  // Alice letter, when present
  int y = -1, b = -1;  // Bob letter, when present
  int unknown = -1;
};

// Moment matrix of local level l: rows and columns are pairs (A-word i,
// B-word j), each word of length <= l, at flat index i * |B-words| + j.
// Entry ((i,j),(k,l)) is <A_i^dagger A_k (x) B_j^dagger B_l>.
struct BipartiteTemplate {
  Scenario scenario;
  int level = 0;
  std::vector<OperatorWord> a_words;
  std::vector<OperatorWord> b_words;
  std::vector<std::pair<OperatorWord, OperatorWord>> unknowns;
  std::vector<NpaEntry> entries;  // row-major

  int size() const { return static_cast<int>(a_words.size() * b_words.size()); }
  int num_unknowns() const { return static_cast<int>(unknowns.size()); }
  const NpaEntry& entry(int r, int c) const { return entries[r * size() + c]; }

  // Slot layout: 0 normalization, Alice marginals, Bob marginals, joint
  // probabilities (outcomes below the last only), then unknowns.
  int num_slots() const;
  int alice_slot(int x, int a) const;
  int bob_slot(int y, int b) const;
  int joint_slot(int x, int y, int a, int b) const;
  int unknown_slot(int id) const;
  int slot(const NpaEntry& e) const;
};

BipartiteTemplate build_bipartite_template(const Scenario& s, int level);

AffineMatrix template_matrix(const BipartiteTemplate& t, const std::vector<LinExpr>& slots);

// Swaps the Alice word indices of rows and columns:
// out((i,j),(k,l)) = m((k,j),(i,l)).
AffineMatrix partial_transpose_alice(const BipartiteTemplate& t, const AffineMatrix& m);

// P(a,b|x,y) for any outcomes from the slot expressions.
LinExpr slot_probability(const BipartiteTemplate& t, const std::vector<LinExpr>& slots, int x,
                         int y, int a, int b);

ComplexMatrix instantiate_numeric(const BipartiteTemplate& t, const ComplexMatrix& rho,
                                  const MeasurementAssemblage& alice,
                                  const MeasurementAssemblage& bob);

struct NpaMembership {
  int level = 0;
  bool feasible = false;
  // Largest t with the moment matrix minus t I still PSD.
  double margin = 0.0;
  RealMatrix certificate;
  SolveDiagnostics diagnostics;
};

NpaMembership q_membership(const Correlation& p, int level, double tol = 1e-7);

// min r with (P + r Q)/(1 + r) local and Q in the level-l relaxation of the
// quantum set; `consistent` fixes Q's Bob marginals to those of P.
DiBound nonlocal_robustness(const Correlation& p, int level, bool consistent);
// The same quantity through 1/s*, s* = max(sum_l q_l - 1); returns 0 when
// s is unbounded (P local).
DiBound nonlocal_robustness_inverse(const Correlation& p, int level, bool consistent);

// min chi[omega]_tr - 1 with chi[omega]^{T_A} >= 0, chi[omega] >= chi[rho].
DiBound er_di_mblhg(const Correlation& p, int level);
// Same with only the value of a Bell functional fixed.
DiBound er_di_bell(const BellFunctional& f, double observed, int level);

}  // namespace ammkit
