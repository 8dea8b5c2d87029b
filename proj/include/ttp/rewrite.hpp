#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "ttp/freealg.hpp"
#include "ttp/matrix.hpp"

namespace ttp {

/// high -> tail, standing for high - tail in the ideal.
struct Rule {
  Word high;
  NCPoly tail;
};

struct Overlap {
  std::size_t first = 0, second = 0;  // rule indices: high(first) = m m', high(second) = m' m''
  Word word;                          // m m' m''
  std::size_t shift = 0;              // |m|
};

struct HilbertProfile {
  std::vector<std::size_t> dims;
  bool operator==(const HilbertProfile& o) const { return dims == o.dims; }
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
    return s;
  }
};

class RewriteSystem {
 public:
  RewriteSystem(AlphabetPtr al, Field f) : al_(std::move(al)), field_(std::move(f)) {}

  /// Orients each relation by its leading word and inter-reduces. No overlap
  /// resolution happens here.
  static RewriteSystem from_relations(const std::vector<NCPoly>& rels) {
    if (rels.empty()) throw Error(ErrorCode::InvalidArgument, "no relations; build an empty system directly");
    Field f = rels[0].field();
    for (const auto& r : rels) f = join(f, r.field());
    RewriteSystem rs(rels[0].alphabet(), f);
    std::vector<NCPoly> sorted;
    for (const auto& r : rels) {
      if (!r.is_homogeneous()) throw Error(ErrorCode::InvalidArgument, "relation not homogeneous: " + r.to_string());
      if (!r.is_zero()) sorted.push_back(r.lift(f));
    }
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const NCPoly& a, const NCPoly& b) { return a.leading_term().first < b.leading_term().first; });
    for (const auto& r : sorted) {
      NCPoly red = rs.reduce(r);
      if (!red.is_zero()) rs.push_rule(red);
    }
    rs.interreduce();
    return rs;
  }

  const AlphabetPtr& alphabet() const { return al_; }
  const Field& field() const { return field_; }
  const std::vector<Rule>& rules() const { return rules_; }
  std::optional<int> completed_to() const { return completed_to_; }

  void require_completed(int d) const {
    if (!completed_to_ || *completed_to_ < d)
      throw Error(ErrorCode::NotCompleted, "system completed to " + (completed_to_ ? std::to_string(*completed_to_) : std::string("none")) +
                                               ", degree " + std::to_string(d) + " requested");
  }

  // First (position, rule) with high(rule) occurring in w, scanning positions left to right.
  std::optional<std::pair<std::size_t, std::size_t>> find_match(const Word& w) const {
    for (std::size_t pos = 0; pos < w.length(); ++pos)
      for (std::size_t r = 0; r < rules_.size(); ++r) {
        const std::string& h = rules_[r].high.letters;
        if (w.letters.compare(pos, h.size(), h) == 0) return std::make_pair(pos, r);
      }
    return std::nullopt;
  }

  bool is_normal(const Word& w) const { return !find_match(w); }

  /// Rewrites the largest reducible word first, at its leftmost match.
  NCPoly reduce(const NCPoly& p) const {
    NCPoly::Terms work;
    for (const auto& [w, c] : p.terms()) work.emplace(w, c.lift(join(field_, c.field())));
    NCPoly out(al_, join(field_, p.field()));
    while (!work.empty()) {
      auto it = std::prev(work.end());
      Word w = it->first;
      Scalar c = it->second;
      work.erase(it);
      auto m = find_match(w);
      if (!m) {
        out.add_term(w, c);
        continue;
      }
      apply_rule(w, m->first, m->second, c, work);
    }
    return out;
  }

  /// Random word and random match at each step; used to test confluence.
  NCPoly reduce_random(const NCPoly& p, std::mt19937_64& rng) const {
    NCPoly::Terms work;
    for (const auto& [w, c] : p.terms()) work.emplace(w, c);
    NCPoly out(al_, join(field_, p.field()));
    while (!work.empty()) {
      auto it = work.begin();
      std::advance(it, static_cast<long>(rng() % work.size()));
      Word w = it->first;
      Scalar c = it->second;
      work.erase(it);
      std::vector<std::pair<std::size_t, std::size_t>> ms;
      for (std::size_t pos = 0; pos < w.length(); ++pos)
        for (std::size_t r = 0; r < rules_.size(); ++r)
          if (w.letters.compare(pos, rules_[r].high.length(), rules_[r].high.letters) == 0) ms.emplace_back(pos, r);
      if (ms.empty()) {
        out.add_term(w, c);
        continue;
      }
      auto [pos, r] = ms[rng() % ms.size()];
      apply_rule(w, pos, r, c, work);
    }
    return out;
  }

  std::vector<Overlap> overlaps(int max_degree = 1 << 30) const {
    std::vector<Overlap> out;
    for (std::size_t i = 0; i < rules_.size(); ++i)
      for (std::size_t j = 0; j < rules_.size(); ++j) {
        const std::string& a = rules_[i].high.letters;
        const std::string& b = rules_[j].high.letters;
        for (std::size_t s = 1; s < a.size(); ++s) {
          std::size_t k = a.size() - s;  // |m'|
          if (k >= b.size()) continue;
          if (a.compare(s, k, b, 0, k) != 0) continue;
          Word w = rules_[i].high * rules_[j].high.sub(k, b.size() - k, *al_);
          if (w.degree > max_degree) continue;
          out.push_back(Overlap{i, j, w, s});
        }
      }
    std::sort(out.begin(), out.end(), [](const Overlap& x, const Overlap& y) {
      if (x.word.degree != y.word.degree) return x.word.degree < y.word.degree;
      if (x.word.letters != y.word.letters) return x.word.letters < y.word.letters;
      if (x.first != y.first) return x.first < y.first;
      return x.second < y.second;
    });
    return out;
  }

  /// f_{W1} m'' - m f_{W2}, unreduced.
  NCPoly s_difference(const Overlap& o) const {
    const Rule& r1 = rules_[o.first];
    const Rule& r2 = rules_[o.second];
    std::size_t k = r1.high.length() - o.shift;
    Word m = r1.high.sub(0, o.shift, *al_);
    Word m2 = r2.high.sub(k, r2.high.length() - k, *al_);
    NCPoly a = r1.tail * NCPoly::monomial(al_, m2, field_.one());
    NCPoly b = NCPoly::monomial(al_, m, field_.one()) * r2.tail;
    return a - b;
  }

  /// Adds a rule from a nonzero reduced polynomial (made monic).
  void push_rule(const NCPoly& p) {
    NCPoly q = p.monic();
    auto [w, c] = q.leading_term();
    NCPoly tail = NCPoly::monomial(al_, w, c) - q;
    if (!field_.contains(tail.field())) field_ = join(field_, tail.field());
    rules_.push_back(Rule{w, tail});
  }

  // Tail words are smaller than their own high term, so a rule never
  // rewrites its own tail.
  void interreduce() {
    for (auto& r : rules_) r.tail = reduce(r.tail);
  }

  void set_completed(int d) { completed_to_ = d; }

 private:
  void apply_rule(const Word& w, std::size_t pos, std::size_t r, const Scalar& c, NCPoly::Terms& work) const {
    const Rule& rule = rules_[r];
    Word pre = w.sub(0, pos, *al_);
    Word post = w.sub(pos + rule.high.length(), w.length() - pos - rule.high.length(), *al_);
    for (const auto& [t, tc] : rule.tail.terms()) {
      Word nw = pre * t * post;
      Scalar v = c * tc;
      auto jt = work.find(nw);
      if (jt == work.end()) {
        work.emplace(nw, v);
      } else {
        jt->second += v;
        if (jt->second.is_zero()) work.erase(jt);
      }
    }
  }

  AlphabetPtr al_;
  Field field_;
  std::vector<Rule> rules_;
  std::optional<int> completed_to_;
};

struct Completion {
  RewriteSystem system;
  std::vector<Rule> added;  // new rules as they stand in the final system
};

/// Resolves every overlap of degree <= d, degree by degree; within a degree
/// overlaps are taken in word order.
inline Completion complete(const RewriteSystem& input, int d) {
  RewriteSystem rs = input;
  std::size_t original = rs.rules().size();
  int lo = 1 << 30;
  for (const auto& r : rs.rules()) lo = std::min(lo, r.high.degree);
  for (int deg = lo + 1; deg <= d; ++deg) {
    // Rules added at this degree only create overlaps of higher degree.
    auto ovs = rs.overlaps(deg);
    for (const auto& o : ovs) {
      if (o.word.degree != deg) continue;
      NCPoly s = rs.reduce(rs.s_difference(o));
      if (!s.is_zero()) rs.push_rule(s);
    }
  }
  rs.interreduce();
  rs.set_completed(d);
  Completion out{rs, {}};
  for (std::size_t i = original; i < rs.rules().size(); ++i) out.added.push_back(rs.rules()[i]);
  return out;
}

/// Memoized word normal forms; not thread-safe, use one per thread.
class Reducer {
 public:
  explicit Reducer(const RewriteSystem& rs) : rs_(&rs) {}

  const RewriteSystem& system() const { return *rs_; }

  const NCPoly& word_nf(const Word& w) {
    auto it = memo_.find(w.letters);
    if (it != memo_.end()) return it->second;
    NCPoly nf = rs_->reduce(NCPoly::monomial(rs_->alphabet(), w, rs_->field().one()));
    return memo_.emplace(w.letters, std::move(nf)).first->second;
  }

  NCPoly reduce(const NCPoly& p) {
    NCPoly out(rs_->alphabet(), join(rs_->field(), p.field()));
    for (const auto& [w, c] : p.terms()) {
      const NCPoly& nf = word_nf(w);
      for (const auto& [v, d] : nf.terms()) out.add_term(v, c * d);
    }
    return out;
  }

  // Normal form of u * p for a word u.
  NCPoly left_mul(const Word& u, const NCPoly& p) {
    NCPoly out(rs_->alphabet(), join(rs_->field(), p.field()));
    for (const auto& [w, c] : p.terms()) {
      const NCPoly& nf = word_nf(u * w);
      for (const auto& [v, d] : nf.terms()) out.add_term(v, c * d);
    }
    return out;
  }

  NCPoly right_mul(const NCPoly& p, const Word& u) {
    NCPoly out(rs_->alphabet(), join(rs_->field(), p.field()));
    for (const auto& [w, c] : p.terms()) {
      const NCPoly& nf = word_nf(w * u);
      for (const auto& [v, d] : nf.terms()) out.add_term(v, c * d);
    }
    return out;
  }

 private:
  const RewriteSystem* rs_;
  std::unordered_map<std::string, NCPoly> memo_;
};

/// Normal words by weighted degree 0..d.
inline std::vector<std::vector<Word>> normal_words(const RewriteSystem& rs, int d) {
  rs.require_completed(d);
  const Alphabet& al = *rs.alphabet();
  std::vector<std::vector<Word>> out(static_cast<std::size_t>(d + 1));
  Word cur;
  auto suffix_reducible = [&](const Word& w) {
    for (const auto& r : rs.rules()) {
      const std::string& h = r.high.letters;
      if (h.size() <= w.letters.size() && w.letters.compare(w.letters.size() - h.size(), h.size(), h) == 0) return true;
    }
    return false;
  };
  auto rec = [&](auto&& self) -> void {
    out[static_cast<std::size_t>(cur.degree)].push_back(cur);
    for (std::size_t i = 0; i < al.size(); ++i) {
      if (cur.degree + al.weight(i) > d) continue;
      cur.letters.push_back(static_cast<char>(i));
      cur.degree += al.weight(i);
      if (!suffix_reducible(cur)) self(self);
      cur.letters.pop_back();
      cur.degree -= al.weight(i);
    }
  };
  rec(rec);
  for (auto& v : out) std::sort(v.begin(), v.end());
  return out;
}

inline HilbertProfile hilbert(const RewriteSystem& rs, int d) {
  HilbertProfile h;
  for (const auto& v : normal_words(rs, d)) h.dims.push_back(v.size());
  return h;
}

/// Dimensions by brute-force linear algebra on the span of m r m' inside the
/// word space; no rewriting involved.
inline HilbertProfile hilbert_oracle(const std::vector<NCPoly>& relations, const AlphabetPtr& al, const Field& field, int d) {
  Field f = field;
  for (const auto& r : relations) f = join(f, r.field());
  HilbertProfile out;
  for (int n = 0; n <= d; ++n) {
    std::vector<Word> words = all_words(*al, n);
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < words.size(); ++i) idx[words[i].letters] = i;
    RowSpan span(f, words.size());
    for (const auto& r : relations) {
      if (r.is_zero()) continue;
      int k = r.degree();
      if (!r.is_homogeneous()) throw Error(ErrorCode::InvalidArgument, "oracle needs homogeneous relations");
      for (int i = 0; i + k <= n; ++i)
        for (const Word& m : all_words(*al, i))
          for (const Word& m2 : all_words(*al, n - k - i)) {
            RowSpan::Sparse v;
            for (const auto& [w, c] : r.terms()) v.emplace_back(idx.at(m.letters + w.letters + m2.letters), c.lift(f));
            span.insert(v);
          }
    }
    out.dims.push_back(words.size() - span.dim());
  }
  return out;
}

}  // namespace ttp
