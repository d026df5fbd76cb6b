#include "errw/path_recursion.hpp"

#include <ostream>

namespace errw {

namespace {

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

Rational ratio(std::uint64_t num, std::uint64_t den) {
  Rational q(big(num), big(den));
  q.canonicalize();
  return q;
}

MoveSymbol decode(unsigned digit) {
  return MoveSymbol{static_cast<std::uint8_t>(digit >> 1), (digit & 1) ? Direction::Right : Direction::Left};
}

// Position-only check so that the rational work is done for valid paths only.
bool is_path(const std::vector<MoveSymbol>& moves) {
  if (moves.empty() || moves.size() % 2 != 0) return false;
  int pos[2] = {0, 0};
  for (std::size_t t = 0; t < moves.size(); ++t) {
    const auto& m = moves[t];
    int& x = pos[m.walker];
    if (x == -1 && m.direction == Direction::Left) return false;
    if (x == 1 && m.direction == Direction::Right) return false;
    x += m.direction == Direction::Right ? 1 : -1;
    const bool met = pos[0] == 0 && pos[1] == 0;
    if (met != (t + 1 == moves.size())) return false;
  }
  return true;
}

}  // namespace

std::string to_string(const MoveSymbol& m) {
  return std::to_string(m.walker + 1) + (m.direction == Direction::Left ? "l" : "r");
}

std::string to_string(const std::vector<MoveSymbol>& moves) {
  std::string s;
  for (const auto& m : moves) {
    if (!s.empty()) s += ' ';
    s += to_string(m);
  }
  return s;
}

std::optional<PathRecord> evaluate_path(const std::vector<MoveSymbol>& moves, std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) throw std::invalid_argument("edge weights must be positive");
  if (!is_path(moves)) return std::nullopt;
  const Rational half(1, 2);
  PathRecord rec;
  rec.moves = moves;
  rec.probability = 1;
  int pos[2] = {0, 0};
  std::uint64_t wl = a;
  std::uint64_t wr = b;
  for (std::size_t t = 0; t < moves.size(); ++t) {
    const auto& m = moves[t];
    int& x = pos[m.walker];
    if (t + 1 == moves.size()) rec.left = x == -1;
    if (x == 0) {
      rec.probability *= half * ratio(m.direction == Direction::Left ? wl : wr, wl + wr);
    } else {
      rec.probability *= half;
    }
    const int to = x + (m.direction == Direction::Right ? 1 : -1);
    if (std::min(x, to) == -1) {
      ++wl;
      ++rec.d;
    } else {
      ++wr;
    }
    x = to;
  }
  rec.f = ratio(a + rec.d, a + b + moves.size());
  return rec;
}

std::vector<PathRecord> enumerate_paths(unsigned l, std::uint64_t a, std::uint64_t b) {
  if (l < 1 || l > kMaxEnumerationHalfLength) {
    throw std::out_of_range("enumeration length l = " + std::to_string(l) + " outside [1, " +
                            std::to_string(kMaxEnumerationHalfLength) + "]");
  }
  const unsigned len = 2 * l;
  const std::uint64_t candidates = std::uint64_t{1} << (2 * len);
  std::vector<PathRecord> out;
  std::vector<MoveSymbol> moves(len);
  for (std::uint64_t code = 0; code < candidates; ++code) {
    for (unsigned t = 0; t < len; ++t) moves[t] = decode(static_cast<unsigned>((code >> (2 * (len - 1 - t))) & 3));
    if (!is_path(moves)) continue;
    out.push_back(*evaluate_path(moves, a, b));
  }
  return out;
}

PathRecord extend_path(const PathRecord& rho, int k, std::uint64_t a, std::uint64_t b) {
  if (k < 1 || k > 4) throw std::invalid_argument("extension index must be 1, 2, 3 or 4, got " + std::to_string(k));
  if (rho.moves.size() < 2) throw std::invalid_argument("cannot extend an empty path");
  const std::uint64_t l = rho.half_length();
  const MoveSymbol last = rho.moves.back();
  const auto outer = last.walker;
  const auto centre = static_cast<std::uint8_t>(1 - outer);

  const std::uint64_t total = a + b + 2 * l - 1;
  const std::uint64_t w_left = a + rho.d - (rho.left ? 1 : 0);
  const std::uint64_t w_right = total - w_left;
  const bool goes_left = k <= 2;

  PathRecord out;
  out.moves = rho.moves;
  out.moves.pop_back();
  const MoveSymbol away{centre, goes_left ? Direction::Left : Direction::Right};
  const MoveSymbol back{centre, goes_left ? Direction::Right : Direction::Left};
  if (k % 2 == 1) {
    out.moves.insert(out.moves.end(), {away, back, last});
    out.left = rho.left;
  } else {
    out.moves.insert(out.moves.end(), {away, last, back});
    out.left = goes_left;
  }
  out.probability = rho.probability * Rational(1, 4) * ratio(goes_left ? w_left : w_right, total);
  out.d = rho.d + (goes_left ? 2 : 0);
  out.f = ratio(a + out.d, a + b + 2 * l + 2);
  return out;
}

EQPair base_pair(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) throw std::invalid_argument("edge weights must be positive");
  const Rational v = ratio(a, 2 * (a + b));
  return {v, v};
}

EQPair recursion_step(const EQPair& pair, std::uint64_t a, std::uint64_t b, std::uint64_t l) {
  const std::uint64_t s = a + b + 2 * l;
  const Rational gap = pair.E - pair.q;
  EQPair next;
  next.E = pair.E / 2 + gap / Rational(big((s - 1) * (s + 2)));
  next.q = pair.q / 2 + Rational(1, 4) * ratio(s, s - 1) * gap;
  return next;
}

EQPair enumeration_pair(unsigned l, std::uint64_t a, std::uint64_t b) {
  EQPair sum{Rational(0), Rational(0)};
  for (const auto& rho : enumerate_paths(l, a, b)) {
    sum.E += rho.probability * rho.f;
    if (rho.left) sum.q += rho.probability;
  }
  return sum;
}

Rational closed_form_value(std::uint64_t a, std::uint64_t b, std::uint64_t l) {
  return inverse_power_of_two(static_cast<unsigned>(l)) * ratio(a, a + b);
}

ClosedFormMismatch::ClosedFormMismatch(std::uint64_t a_, std::uint64_t b_, std::uint64_t l_, const std::string& what)
    : std::runtime_error("(a,b,l) = (" + std::to_string(a_) + "," + std::to_string(b_) + "," + std::to_string(l_) +
                         "): " + what),
      a(a_),
      b(b_),
      l(l_) {}

ClosedFormReport verify_closed_form(std::uint64_t a, std::uint64_t b, std::uint64_t L, unsigned enumerate_upto) {
  ClosedFormReport report{a, b, {}};
  EQPair pair = base_pair(a, b);
  for (std::uint64_t l = 1; l <= L; ++l) {
    if (l > 1) pair = recursion_step(pair, a, b, l - 1);
    ClosedFormRow row{l, pair, closed_form_value(a, b, l), std::nullopt};
    if (pair.E != row.closed_form || pair.q != row.closed_form) {
      throw ClosedFormMismatch(a, b, l, "recursion gives E = " + to_string(pair.E) + ", q = " + to_string(pair.q) +
                                            ", closed form " + to_string(row.closed_form));
    }
    if (l <= enumerate_upto) {
      row.enumeration = enumeration_pair(static_cast<unsigned>(l), a, b);
      if (*row.enumeration != pair) {
        throw ClosedFormMismatch(a, b, l, "enumeration gives E = " + to_string(row.enumeration->E) +
                                              ", q = " + to_string(row.enumeration->q));
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

Rational martingale_partial_sum(std::uint64_t a, std::uint64_t b, std::uint64_t L) {
  Rational sum(0);
  EQPair pair = base_pair(a, b);
  for (std::uint64_t l = 1; l <= L; ++l) {
    if (l > 1) pair = recursion_step(pair, a, b, l - 1);
    sum += pair.E;
  }
  return sum;
}

void write_eq_csv(std::ostream& out, const ClosedFormReport& report) {
  out << "l,E_numerator,E_denominator,q_numerator,q_denominator\n";
  for (const auto& row : report.rows) {
    out << row.l << ',' << row.recursion.E.get_num().get_str() << ',' << row.recursion.E.get_den().get_str() << ','
        << row.recursion.q.get_num().get_str() << ',' << row.recursion.q.get_den().get_str() << '\n';
  }
}

}  // namespace errw
