#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ttp/families.hpp"

namespace ttp {

enum class Side { Left, Right };

struct FreeModuleSpec {
  std::vector<int> shifts;  // generator i sits in degree shifts[i]

  std::size_t rank() const { return shifts.size(); }
  int min_shift() const { return shifts.empty() ? 0 : *std::min_element(shifts.begin(), shifts.end()); }
};

using PolyMatrix = std::vector<std::vector<NCPoly>>;

/// d_i for i >= start equals `matrix`, with every shift of M_i one step above M_{i-1}.
struct PeriodicTail {
  std::size_t start = 0;
  PolyMatrix matrix;
  int shift_step = 1;
};

/// Chain complex M_n -> ... -> M_0 of graded free modules.
///
/// Left side: elements are rows, d_i(v) = v * D_i, D_i is rank(M_i) x rank(M_{i-1}).
/// Right side: elements are columns, d_i(v) = D_i * v, D_i is rank(M_{i-1}) x rank(M_i).
/// differentials[0] is unused.
struct GradedComplex {
  std::shared_ptr<const RewriteSystem> algebra;
  Side side = Side::Left;
  std::vector<FreeModuleSpec> modules;
  std::vector<PolyMatrix> differentials;
  std::optional<PeriodicTail> tail;
  bool open_top = false;  // the last module's kernel is not covered by the complex
  std::string label;

  std::size_t length() const { return modules.size(); }

  /// Entry of d_i hitting target generator q from source generator p.
  const NCPoly& entry(std::size_t i, std::size_t p, std::size_t q) const {
    const auto& D = differentials.at(i);
    return side == Side::Left ? D.at(p).at(q) : D.at(q).at(p);
  }

  int entry_degree(std::size_t i, std::size_t p, std::size_t q) const { return modules[i].shifts[p] - modules[i - 1].shifts[q]; }

  /// Modules 0..n, unrolling the periodic tail where needed.
  GradedComplex materialize(std::size_t n) const {
    GradedComplex out = *this;
    if (!tail) return out;
    if (tail->start == 0 || tail->start > out.modules.size()) throw Error(ErrorCode::InvalidArgument, "periodic tail starts past the prefix");
    out.modules.resize(std::min(out.modules.size(), tail->start));
    out.differentials.resize(out.modules.size());
    while (out.modules.size() <= n) {
      FreeModuleSpec m = out.modules.back();
      for (auto& s : m.shifts) s += tail->shift_step;
      out.modules.push_back(m);
      out.differentials.push_back(tail->matrix);
    }
    return out;
  }

  void validate() const {
    if (differentials.size() != modules.size()) throw Error(ErrorCode::InvalidArgument, "one differential slot per module expected");
    for (std::size_t i = 1; i < modules.size(); ++i) {
      const auto& D = differentials[i];
      std::size_t r = side == Side::Left ? modules[i].rank() : modules[i - 1].rank();
      std::size_t c = side == Side::Left ? modules[i - 1].rank() : modules[i].rank();
      if (D.size() != r) throw Error(ErrorCode::InvalidArgument, "differential " + std::to_string(i) + " has the wrong row count");
      for (const auto& row : D)
        if (row.size() != c) throw Error(ErrorCode::InvalidArgument, "differential " + std::to_string(i) + " has the wrong column count");
      for (std::size_t p = 0; p < modules[i].rank(); ++p)
        for (std::size_t q = 0; q < modules[i - 1].rank(); ++q) {
          NCPoly e = algebra->reduce(entry(i, p, q));
          if (e.is_zero()) continue;
          if (!e.is_homogeneous() || e.degree() != entry_degree(i, p, q))
            throw Error(ErrorCode::InvalidArgument, "entry (" + std::to_string(p) + ", " + std::to_string(q) + ") of d_" +
                                                        std::to_string(i) + " has the wrong degree: " + e.to_string());
        }
    }
  }
};

namespace detail {

/// Normal-word bases of the graded pieces of a completed algebra, with memoized products.
class Pieces {
 public:
  explicit Pieces(const RewriteSystem& rs) : rs_(&rs), red_(rs) {
    top_ = rs.completed_to().value_or(-1);
    if (top_ < 0) throw Error(ErrorCode::NotCompleted, "algebra not completed");
    words_ = normal_words(rs, top_);
    index_.resize(words_.size());
    for (std::size_t d = 0; d < words_.size(); ++d)
      for (std::size_t i = 0; i < words_[d].size(); ++i) index_[d][words_[d][i].letters] = i;
  }

  int top() const { return top_; }
  const RewriteSystem& system() const { return *rs_; }
  Reducer& reducer() { return red_; }

  const std::vector<Word>& words(int d) const {
    static const std::vector<Word> none;
    if (d < 0) return none;
    if (d > top_) throw Error(ErrorCode::NotCompleted, "degree " + std::to_string(d) + " beyond completion " + std::to_string(top_));
    return words_[static_cast<std::size_t>(d)];
  }
  std::size_t index(const Word& w) const { return index_.at(static_cast<std::size_t>(w.degree)).at(w.letters); }

 private:
  const RewriteSystem* rs_;
  Reducer red_;
  int top_ = -1;
  std::vector<std::vector<Word>> words_;
  std::vector<std::map<std::string, std::size_t>> index_;
};

/// Basis of (M)_j: pairs (generator, normal word) with generator-major order; offsets per generator.
struct PieceBasis {
  std::vector<std::size_t> offset;
  std::size_t size = 0;
};

inline PieceBasis piece_basis(Pieces& pc, const FreeModuleSpec& m, int j) {
  PieceBasis b;
  for (int s : m.shifts) {
    b.offset.push_back(b.size);
    b.size += pc.words(j - s).size();
  }
  return b;
}

/// Product of a word with a polynomial on the module's side, in normal form.
inline NCPoly act(Pieces& pc, Side side, const Word& w, const NCPoly& e) {
  return side == Side::Left ? pc.reducer().left_mul(w, e) : pc.reducer().right_mul(e, w);
}

inline ScalarMatrix component_matrix(Pieces& pc, const GradedComplex& cx, std::size_t i, int j) {
  const auto& src = cx.modules.at(i);
  const auto& tgt = cx.modules.at(i - 1);
  auto sb = piece_basis(pc, src, j), tb = piece_basis(pc, tgt, j);
  ScalarMatrix m(pc.system().field(), tb.size, sb.size);
  for (std::size_t p = 0; p < src.rank(); ++p) {
    const auto& ws = pc.words(j - src.shifts[p]);
    for (std::size_t a = 0; a < ws.size(); ++a)
      for (std::size_t q = 0; q < tgt.rank(); ++q) {
        const NCPoly& e = cx.entry(i, p, q);
        if (e.is_zero()) continue;
        NCPoly img = act(pc, cx.side, ws[a], e);
        for (const auto& [w, c] : img.terms()) m.set(tb.offset[q] + pc.index(w), sb.offset[p] + a, c);
      }
  }
  return m;
}

inline NCPoly zero_poly(const RewriteSystem& rs) { return NCPoly(rs.alphabet(), rs.field()); }

}  // namespace detail

/// Matrix of d_i on internal degree j; columns index the source piece, rows the target piece.
inline ScalarMatrix component_matrix(const GradedComplex& cx, std::size_t i, int j) {
  if (i == 0 || i >= cx.length()) throw Error(ErrorCode::InvalidArgument, "no differential d_" + std::to_string(i));
  detail::Pieces pc(*cx.algebra);
  return detail::component_matrix(pc, cx, i, j);
}

/// Consecutive differentials compose to zero, checked through the periodic tail's first repeat.
inline bool compose_check(const GradedComplex& cx, int maxdeg) {
  cx.algebra->require_completed(maxdeg);
  std::size_t n = cx.length();
  if (cx.tail) n = std::max(n, cx.tail->start + 3);
  GradedComplex m = cx.materialize(n - 1);
  const RewriteSystem& rs = *m.algebra;
  for (std::size_t i = 1; i + 1 < m.length(); ++i) {
    // d_i o d_{i+1}: generator p of M_{i+1} to generator q of M_{i-1}
    for (std::size_t p = 0; p < m.modules[i + 1].rank(); ++p)
      for (std::size_t q = 0; q < m.modules[i - 1].rank(); ++q) {
        if (m.modules[i + 1].shifts[p] - m.modules[i - 1].shifts[q] > maxdeg) continue;
        NCPoly sum = detail::zero_poly(rs);
        for (std::size_t r = 0; r < m.modules[i].rank(); ++r)
          sum += m.side == Side::Left ? m.entry(i + 1, p, r) * m.entry(i, r, q) : m.entry(i, r, q) * m.entry(i + 1, p, r);
        if (!rs.reduce(sum).is_zero()) return false;
      }
  }
  return true;
}

struct ExactnessProfile {
  std::map<std::pair<int, int>, std::size_t> homology;  // nonzero dims only; position -1 is the augmentation target
  int min_degree = 0, max_degree = 0, top = 0;

  std::size_t at(int i, int j) const {
    auto it = homology.find({i, j});
    return it == homology.end() ? 0 : it->second;
  }
  /// Only a copy of k at (0, 0) survives; with the augmentation appended, nothing survives.
  bool resolves_k(bool augmented) const {
    if (augmented) return homology.empty();
    return homology.size() == 1 && at(0, 0) == 1;
  }
  std::string to_string() const {
    std::string s;
    for (const auto& [ij, d] : homology)
      s += (s.empty() ? "" : " ") + ("H(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ")=" + std::to_string(d));
    return s.empty() ? "exact" : s;
  }
};

/// Homology dimensions at positions 0..max_i and internal degrees min_shift..maxdeg.
/// Words up to degree maxdeg - min_shift are needed. An open top position is skipped.
inline ExactnessProfile exactness_profile(const GradedComplex& cx, bool augment, int maxdeg, std::optional<std::size_t> max_i = std::nullopt) {
  std::size_t top = max_i ? *max_i : cx.length() - 1;
  if (!cx.tail && top >= cx.length()) top = cx.length() - 1;
  GradedComplex m = cx.materialize(top + 1);
  bool finite_end = !cx.tail && top + 1 >= cx.length();
  bool skip_top = finite_end && cx.open_top;
  int lo = 0;
  for (std::size_t i = 0; i <= std::min(top, m.length() - 1); ++i) lo = std::min(lo, m.modules[i].min_shift());
  m.algebra->require_completed(maxdeg - lo);
  detail::Pieces pc(*m.algebra);
  ExactnessProfile out;
  out.min_degree = lo;
  out.max_degree = maxdeg;
  out.top = static_cast<int>(top);
  bool has_aug = augment && !m.modules[0].shifts.empty();
  for (int j = lo; j <= maxdeg; ++j) {
    std::vector<std::size_t> rk(top + 2, 0);  // rk[i] = rank of d_i at degree j
    for (std::size_t i = 1; i <= top + 1 && i < m.length(); ++i) rk[i] = rank(detail::component_matrix(pc, m, i, j));
    std::size_t aug_rank = 0;
    if (has_aug && j == 0)
      for (int s : m.modules[0].shifts) aug_rank += (s == 0);
    aug_rank = std::min<std::size_t>(aug_rank, 1);
    for (std::size_t i = 0; i <= top; ++i) {
      if (skip_top && i == top) continue;
      std::size_t dim = detail::piece_basis(pc, m.modules[i], j).size;
      std::size_t out_rank = i == 0 ? aug_rank : rk[i];
      std::size_t in_rank = i + 1 < rk.size() ? rk[i + 1] : 0;
      std::size_t h = dim - out_rank - in_rank;
      if (h) out.homology[{static_cast<int>(i), j}] = h;
    }
    if (augment && j == 0 && aug_rank == 0) out.homology[{-1, 0}] = 1;
  }
  return out;
}

struct BettiTable {
  std::map<std::pair<int, int>, std::size_t> b;

  std::size_t at(int i, int j) const {
    auto it = b.find({i, j});
    return it == b.end() ? 0 : it->second;
  }
  std::size_t total(int i) const {
    std::size_t s = 0;
    for (const auto& [ij, v] : b)
      if (ij.first == i) s += v;
    return s;
  }
  int max_i() const {
    int m = -1;
    for (const auto& [ij, v] : b)
      if (v) m = std::max(m, ij.first);
    return m;
  }
  bool operator==(const BettiTable& o) const {
    auto nz = [](const BettiTable& t) {
      std::map<std::pair<int, int>, std::size_t> m;
      for (const auto& [k, v] : t.b)
        if (v) m[k] = v;
      return m;
    };
    return nz(*this) == nz(o);
  }
  std::string to_string() const {
    std::string s;
    for (const auto& [ij, v] : b)
      if (v) s += (s.empty() ? "" : " ") + ("(" + std::to_string(ij.first) + ", " + std::to_string(ij.second) + ", " + std::to_string(v) + ")");
    return s;
  }
  static BettiTable of(const GradedComplex& cx) {
    BettiTable t;
    for (std::size_t i = 0; i < cx.length(); ++i)
      for (int s : cx.modules[i].shifts) ++t.b[{static_cast<int>(i), s}];
    return t;
  }
};

struct MinimalResolution {
  BettiTable betti;
  GradedComplex complex;
  bool truncated = true;  // some bound was reached before the kernel vanished
};

/// Minimal free resolution of the trivial module, built degree by degree.
/// Generators of M_i in degree j are the kernel basis vectors (in the order
/// rank_kernel returns them) not already in the submodule generated so far.
inline MinimalResolution minimal_resolution(const RewriteSystem& rs, int max_i, int maxdeg, Side side = Side::Left) {
  rs.require_completed(maxdeg);
  auto alg = std::make_shared<const RewriteSystem>(rs);
  detail::Pieces pc(*alg);
  MinimalResolution out;
  GradedComplex& cx = out.complex;
  cx.algebra = alg;
  cx.side = side;
  cx.open_top = true;
  cx.label = "minimal resolution";
  cx.modules.push_back(FreeModuleSpec{{0}});
  cx.differentials.emplace_back();
  out.betti.b[{0, 0}] = 1;
  const Field& k = alg->field();
  bool ended = false;
  for (int i = 1; i <= max_i; ++i) {
    const FreeModuleSpec& prev = cx.modules.back();
    std::size_t prank = prev.rank();
    FreeModuleSpec cur;
    std::vector<std::vector<NCPoly>> gens;  // image of each new generator, one entry per generator of prev
    for (int j = prev.min_shift(); j <= maxdeg; ++j) {
      auto pb = detail::piece_basis(pc, prev, j);
      if (pb.size == 0) continue;
      ScalarMatrix K;
      if (i == 1) {
        if (j == 0) continue;
        K = ScalarMatrix::identity(k, pb.size);
      } else {
        K = rank_kernel(detail::component_matrix(pc, cx, cx.length() - 1, j)).kernel;
      }
      if (K.cols() == 0) continue;
      RowSpan span(k, pb.size);
      for (std::size_t g = 0; g < gens.size(); ++g) {
        if (cur.shifts[g] >= j) continue;
        for (const Word& w : pc.words(j - cur.shifts[g])) {
          RowSpan::Sparse v;
          for (std::size_t q = 0; q < prank; ++q) {
            if (gens[g][q].is_zero()) continue;
            NCPoly img = detail::act(pc, side, w, gens[g][q]);
            for (const auto& [u, c] : img.terms()) v.emplace_back(pb.offset[q] + pc.index(u), c);
          }
          std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
          span.insert(v);
        }
      }
      for (std::size_t col = 0; col < K.cols(); ++col) {
        std::vector<Scalar> v = K.column(col);
        if (!span.insert(v)) continue;
        std::vector<NCPoly> img(prank, detail::zero_poly(*alg));
        for (std::size_t q = 0; q < prank; ++q) {
          const auto& ws = pc.words(j - prev.shifts[q]);
          for (std::size_t a = 0; a < ws.size(); ++a)
            if (!v[pb.offset[q] + a].is_zero()) img[q].add_term(ws[a], v[pb.offset[q] + a]);
        }
        cur.shifts.push_back(j);
        gens.push_back(std::move(img));
        ++out.betti.b[{i, j}];
      }
    }
    if (cur.shifts.empty()) {
      ended = true;
      break;
    }
    PolyMatrix D;
    if (side == Side::Left) {
      D = gens;
    } else {
      D.assign(prank, std::vector<NCPoly>(gens.size(), detail::zero_poly(*alg)));
      for (std::size_t g = 0; g < gens.size(); ++g)
        for (std::size_t q = 0; q < prank; ++q) D[q][g] = gens[g][q];
    }
    cx.modules.push_back(cur);
    cx.differentials.push_back(std::move(D));
  }
  out.truncated = !ended;
  cx.open_top = !ended;
  return out;
}

/// sum_i (-1)^i b_{i,j} t^j times the Hilbert series is 1 through maxdeg.
inline bool euler_check(const Presentation& alg, const BettiTable& bt, int maxdeg) {
  auto h = hilbert(alg.completed(std::max(maxdeg, 2)), maxdeg);
  std::vector<long> p(static_cast<std::size_t>(maxdeg + 1), 0);
  for (const auto& [ij, v] : bt.b)
    if (ij.second <= maxdeg && ij.second >= 0) p[static_cast<std::size_t>(ij.second)] += (ij.first % 2 ? -1 : 1) * static_cast<long>(v);
  for (int n = 0; n <= maxdeg; ++n) {
    long s = 0;
    for (int j = 0; j <= n; ++j) s += p[static_cast<std::size_t>(j)] * static_cast<long>(h.dims[static_cast<std::size_t>(n - j)]);
    if (s != (n == 0 ? 1 : 0)) return false;
  }
  return true;
}

namespace detail {

inline PolyMatrix poly_matrix(const RewriteSystem& rs, const std::vector<std::vector<std::string>>& src) {
  PolyMatrix m;
  for (const auto& row : src) {
    m.emplace_back();
    for (const auto& s : row) m.back().push_back(parse_poly(s, rs.alphabet(), rs.field()));
  }
  return m;
}

inline PolyMatrix scale_entries(PolyMatrix m, const std::vector<std::vector<Scalar>>& factors) {
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] = factors[r][c] * m[r][c];
  return m;
}

}  // namespace detail

/// The length-three linear complex over T(g,h) (left modules, rows act on the right).
inline GradedComplex resolution_Q(const Scalar& g, const Scalar& h, int maxdeg) {
  Field k = join(g.field(), h.field());
  auto alg = std::make_shared<const RewriteSystem>(build_Tgh(g, h).completed(std::max(maxdeg, 3)));
  auto P = [&](const std::string& s) { return parse_poly(s, alg->alphabet(), k); };
  GradedComplex cx;
  cx.algebra = alg;
  cx.label = "Q(g,h)";
  cx.modules = {{{0}}, {{1, 1, 1}}, {{2, 2, 2}}, {{3}}};
  NCPoly zero = detail::zero_poly(*alg);
  cx.differentials = {PolyMatrix{},
                      {{P("x")}, {P("y")}, {P("w")}},
                      {{-P("x"), P("w") - g * P("y"), P("y")}, {zero, h * P("y"), P("w")}, {-P("y"), P("x"), zero}},
                      {{h * P("y"), P("w"), -h * P("x")}}};
  cx.validate();
  return cx;
}

/// The eventually periodic complex over T(g,0); d_i repeats from i = 5.
inline GradedComplex resolution_P(const Scalar& g, int maxdeg) {
  Field k = g.field();
  auto alg = std::make_shared<const RewriteSystem>(build_Tgh(g, k.zero()).completed(std::max(maxdeg, 3)));
  auto P = [&](const std::string& s) { return parse_poly(s, alg->alphabet(), k); };
  GradedComplex cx;
  cx.algebra = alg;
  cx.label = "P(g)";
  cx.modules = {{{0}}, {{1, 1, 1}}, {{2, 2, 2}}, {{3, 4}}, {{4, 5}}};
  NCPoly zero = detail::zero_poly(*alg);
  cx.differentials = {PolyMatrix{},
                      {{P("x")}, {P("y")}, {P("w")}},
                      {{-P("x"), P("w") - g * P("y"), P("y")}, {zero, zero, P("w")}, {-P("y"), P("x"), zero}},
                      {{zero, P("w"), zero}, {P("wy"), -P("y^2"), -P("wx")}},
                      {{P("w"), zero}, {P("y^2"), P("w")}}};
  cx.tail = PeriodicTail{5, {{P("w"), zero}, {P("y^2"), -P("w")}}, 1};
  cx.validate();
  return cx;
}

/// Hom(-, T) of a finite left complex: right modules, negated shifts, same matrices, positions reversed.
inline GradedComplex dual_complex(const GradedComplex& cx) {
  if (cx.tail) throw Error(ErrorCode::InvalidArgument, "dual of a periodic complex");
  std::size_t n = cx.length() - 1;
  GradedComplex out;
  out.algebra = cx.algebra;
  out.side = cx.side == Side::Left ? Side::Right : Side::Left;
  out.label = "dual of " + cx.label;
  for (std::size_t k = 0; k <= n; ++k) {
    FreeModuleSpec m = cx.modules[n - k];
    for (auto& s : m.shifts) s = -s;
    out.modules.push_back(m);
    out.differentials.push_back(k == 0 ? PolyMatrix{} : cx.differentials[n - k + 1]);
  }
  return out;
}

}  // namespace ttp
