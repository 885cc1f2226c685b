#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ammkit/bell.hpp"
#include "ammkit/model.hpp"
#include "ammkit/quantum.hpp"
#include "ammkit/solver.hpp"

namespace ammkit {

// Projector symbol E_{outcome|setting} of one party.
struct Letter {
  int setting = 0;
  int outcome = 0;
  auto operator<=>(const Letter&) const = default;
};

// Product of projectors; the empty word is the identity.
class OperatorWord {
 public:
  OperatorWord() = default;
  explicit OperatorWord(std::vector<Letter> letters);

  const std::vector<Letter>& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool is_identity() const { return letters_.empty(); }
  bool is_projector() const { return letters_.size() == 1; }

  OperatorWord reversed() const;
  // "1" or e.g. "E0|1 E1|0" (outcome|setting, 0-based).
  std::string to_string() const;

  auto operator<=>(const OperatorWord&) const = default;

 private:
  std::vector<Letter> letters_;
};

// a * b reduced with E E = E and E_{b|y} E_{b'|y} = 0 for b != b';
// nullopt when the product vanishes.
std::optional<OperatorWord> multiply(const OperatorWord& a, const OperatorWord& b);

// The smaller of w and its reversal; moments of w and w^dagger coincide
// once unknown moments are taken real.
OperatorWord canonical(const OperatorWord& w);

inline constexpr std::size_t kMaxWords = 256;

// All reduced words of length <= level over the letters E_{b|y} with
// b < n_outcomes - 1 (the last outcome follows from completeness), ordered
// by length, then lexicographically.
std::vector<OperatorWord> enumerate_words(int n_settings, int n_outcomes, int level,
                                          std::size_t cap = kMaxWords);

// Operator for a word given projective measurements.
ComplexMatrix word_operator(const OperatorWord& w, const MeasurementAssemblage& m);

enum class EntryKind { Zero, Normalization, Probability, Unknown };

struct AmmEntry {
  EntryKind kind = EntryKind::Zero;
  int setting = -1;  // Probability
  int outcome = -1;  // Probability
  int unknown = -1;  // Unknown
};

// Symbolic moment matrix chi_{ij} = tr(rho W_i^dagger W_j) of a single
// party's operator words at a given level.
struct AmmTemplate {
  int n_settings = 0;
  int n_outcomes = 0;
  int level = 0;
  std::vector<OperatorWord> words;
  std::vector<OperatorWord> unknowns;  // canonical word per unknown id
  std::vector<AmmEntry> entries;       // row-major

  int size() const { return static_cast<int>(words.size()); }
  int num_unknowns() const { return static_cast<int>(unknowns.size()); }
  const AmmEntry& entry(int i, int j) const { return entries[i * size() + j]; }

  // Moment slots shared by every matrix built on this template: 0 is the
  // trace, then one per projector (setting-major), then the unknowns.
  int num_slots() const { return 1 + n_settings * (n_outcomes - 1) + num_unknowns(); }
  int probability_slot(int setting, int outcome) const {
    return 1 + setting * (n_outcomes - 1) + outcome;
  }
  int slot(const AmmEntry& e) const;
};

// Template for the trusted/characterized-free party: the party at index
// `party` of the scenario (Bob, i.e. 1, for bipartite steering).
AmmTemplate build_template(const Scenario& s, int level, int party = 1);
AmmTemplate build_template(int n_settings, int n_outcomes, int level);

nlohmann::json template_to_json(const AmmTemplate& t);

// Fills the template with one expression per slot; Zero entries stay 0.
AffineMatrix template_matrix(const AmmTemplate& t, const std::vector<LinExpr>& slots);

// chi[rho_{a|x}] for every (x, a), computed directly from the operators.
std::vector<std::vector<ComplexMatrix>> instantiate_numeric(const AmmTemplate& t,
                                                            const Assemblage& a,
                                                            const MeasurementAssemblage& m);
ComplexMatrix instantiate_numeric(const AmmTemplate& t, const ComplexMatrix& state,
                                  const MeasurementAssemblage& m);

enum class DiStatus { Solved, Infeasible };

// Device-independent bound from a moment-matrix relaxation. Infeasible
// certifies that the data lie outside the level-l relaxation; value is NaN
// in that case.
struct DiBound {
  double value = std::numeric_limits<double>::quiet_NaN();
  int level = 0;
  DiStatus status = DiStatus::Solved;
  // Optimal moment matrices of the observed objects (x-major, then a).
  std::vector<RealMatrix> certificate;
  SolveDiagnostics diagnostics;

  bool infeasible() const { return status == DiStatus::Infeasible; }
};

std::string to_string(DiStatus s);

// Lower bound on the steering robustness of any assemblage reproducing P.
DiBound sr_di(const Correlation& p, int level);
// Same, constrained only by the value of a Bell functional.
DiBound sr_di_bell(const BellFunctional& f, double observed, int level);
// Lower bound on the consistent steering robustness.
DiBound sr_di_consistent(const Correlation& p, int level);
// Lower bound on the steerable weight; `consistent` adds the marginal
// equalities used by sr_di_consistent.
DiBound sw_di(const Correlation& p, int level, bool consistent);

// Feasibility of the tripartite AMMs chi[rho_{ab|xy}] built on Charlie's
// words, with P(a,b,c|x,y,z) fixed. Feasible iff the largest uniform
// eigenvalue margin is >= -tol.
struct TripartiteFeasibility {
  bool feasible = false;
  double margin = 0.0;
  int level = 0;
  std::vector<RealMatrix> certificate;
  SolveDiagnostics diagnostics;
};

TripartiteFeasibility tripartite_amm_feasible(const Correlation& p, int level,
                                              double tol = 1e-7);
TripartiteFeasibility tripartite_amm_feasible(const TripartiteAssemblage& t,
                                              const MeasurementAssemblage& charlie, int level,
                                              double tol = 1e-7);

// P(a,b,c|x,y,z) = tr(rho_{ab|xy} E_{c|z}).
Correlation tripartite_correlation(const TripartiteAssemblage& t,
                                   const MeasurementAssemblage& charlie);

}  // namespace ammkit
