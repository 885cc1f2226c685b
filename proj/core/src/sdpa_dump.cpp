#include <fstream>
#include <ostream>
#include <stdexcept>

#include "ammkit/solver.hpp"

namespace ammkit {

// SDPA sparse format: minimize sum c_i x_i subject to
// sum_i F_i x_i - F_0 >= 0. Our LMIs read F0 + sum y_i F_i >= 0, so the
// constant is written negated. Equalities become a diagonal LP block
// holding each row twice, once per sign.
void write_sdpa(const SdpProblem& problem, std::ostream& out) {
  const auto& lmis = problem.lmis();
  const auto& eqs = problem.equalities();
  const double sign = problem.sense() == Sense::Maximize ? -1.0 : 1.0;
  out.precision(17);

  out << "\"ammkit dump: " << problem.num_vars() << " variables, " << lmis.size()
      << " LMI blocks, " << eqs.size() << " equalities";
  if (problem.sense() == Sense::Maximize) out << ", objective negated (was maximize)";
  out << ", objective constant " << problem.objective().constant() << "\n";

  out << problem.num_vars() << " = mDIM\n";
  const std::size_t nblocks = lmis.size() + (eqs.empty() ? 0 : 1);
  out << nblocks << " = nBLOCK\n";
  for (const auto& lmi : lmis) out << lmi.dim << " ";
  if (!eqs.empty()) out << -static_cast<long>(2 * eqs.size());
  out << " = bLOCKsTRUCT\n";

  std::vector<double> c(problem.num_vars(), 0.0);
  for (const auto& t : problem.objective().terms()) c[t.var] += sign * t.coef;
  for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i];
  out << "\n";

  // Lines: matno blkno i j value, 1-based, upper triangle.
  for (std::size_t k = 0; k < lmis.size(); ++k) {
    const auto& lmi = lmis[k];
    for (int r = 0; r < lmi.dim; ++r)
      for (int col = r; col < lmi.dim; ++col)
        if (lmi.constant(r, col) != 0.0)
          out << 0 << " " << k + 1 << " " << r + 1 << " " << col + 1 << " "
              << -lmi.constant(r, col) << "\n";
    for (const auto& vc : lmi.coefficients)
      for (const auto& e : vc.entries)
        if (e.value != 0.0)
          out << vc.var + 1 << " " << k + 1 << " " << e.row + 1 << " " << e.col + 1 << " "
              << e.value << "\n";
  }
  if (!eqs.empty()) {
    const std::size_t blk = lmis.size() + 1;
    for (std::size_t r = 0; r < eqs.size(); ++r) {
      const std::size_t lo = 2 * r + 1, hi = 2 * r + 2;
      if (eqs[r].rhs != 0.0) {
        out << 0 << " " << blk << " " << lo << " " << lo << " " << eqs[r].rhs << "\n";
        out << 0 << " " << blk << " " << hi << " " << hi << " " << -eqs[r].rhs << "\n";
      }
      for (const auto& t : eqs[r].terms) {
        out << t.var + 1 << " " << blk << " " << lo << " " << lo << " " << t.coef << "\n";
        out << t.var + 1 << " " << blk << " " << hi << " " << hi << " " << -t.coef << "\n";
      }
    }
  }
}

void write_sdpa(const SdpProblem& problem, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_sdpa: cannot open " + path);
  write_sdpa(problem, f);
}

}  // namespace ammkit
