#include <algorithm>
#include <sstream>

#include "ammkit/amm.hpp"

namespace ammkit {

OperatorWord::OperatorWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

OperatorWord OperatorWord::reversed() const {
  return OperatorWord(std::vector<Letter>(letters_.rbegin(), letters_.rend()));
}

std::string OperatorWord::to_string() const {
  if (letters_.empty()) return "1";
  std::ostringstream s;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) s << ' ';
    s << 'E' << letters_[i].outcome << '|' << letters_[i].setting;
  }
  return s.str();
}

std::optional<OperatorWord> multiply(const OperatorWord& a, const OperatorWord& b) {
  std::vector<Letter> out;
  out.reserve(a.letters().size() + b.letters().size());
  auto push = [&out](const Letter& l) {
    if (!out.empty() && out.back().setting == l.setting) return out.back().outcome == l.outcome;
    out.push_back(l);
    return true;
  };
  for (const Letter& l : a.letters())
    if (!push(l)) return std::nullopt;
  for (const Letter& l : b.letters())
    if (!push(l)) return std::nullopt;
  return OperatorWord(std::move(out));
}

OperatorWord canonical(const OperatorWord& w) { return std::min(w, w.reversed()); }

std::vector<OperatorWord> enumerate_words(int n_settings, int n_outcomes, int level,
                                          std::size_t cap) {
  if (level < 1) throw ValidationError("enumerate_words: level must be >= 1");
  if (n_settings < 1 || n_outcomes < 2)
    throw ValidationError("enumerate_words: need at least one setting and two outcomes");
  std::vector<OperatorWord> words{OperatorWord()};
  std::size_t begin = 0;
  for (int len = 1; len <= level; ++len) {
    const std::size_t end = words.size();
    for (std::size_t i = begin; i < end; ++i) {
      const std::vector<Letter> letters = words[i].letters();
      for (int y = 0; y < n_settings; ++y) {
        if (!letters.empty() && letters.back().setting == y) continue;
        for (int b = 0; b + 1 < n_outcomes; ++b) {
          std::vector<Letter> next = letters;
          next.push_back({y, b});
          words.emplace_back(std::move(next));
          if (words.size() > cap)
            throw ValidationError("enumerate_words: more than " + std::to_string(cap) +
                                  " words at level " + std::to_string(level));
        }
      }
    }
    std::sort(words.begin() + static_cast<std::ptrdiff_t>(end), words.end());
    begin = end;
  }
  return words;
}

ComplexMatrix word_operator(const OperatorWord& w, const MeasurementAssemblage& m) {
  const int d = m.dim();
  ComplexMatrix op = identity(d);
  for (const Letter& l : w.letters()) op = op * m.povms[l.setting][l.outcome];
  return op;
}

}  // namespace ammkit
