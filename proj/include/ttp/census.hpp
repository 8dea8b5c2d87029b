#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <thread>
#include <tuple>

#include "ttp/koszulreg.hpp"

namespace ttp {

struct CensusSpec {
  Field field = Field::prime(3);
  std::string family = "C";                                // C, T or Tgh
  std::map<std::string, std::vector<Scalar>> values;       // restricts a parameter; others range over the field
  bool jnf = false;                                        // T only: keep tuples already in Jordan normal form
  int bound = 50;
  int koszul_deg = 4;                                      // 0 skips the Koszul column
  bool asreg = true;
};

struct CensusRow {
  std::vector<Scalar> tuple;
  std::string verdict;
  std::string case_id;
  std::string koszul = "-";
  std::string asreg = "-";
  int bound = 0;
  bool exact = true;
  std::optional<TTPType3D> type3d;  // T rows

  std::string tuple_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) s += (i ? (tuple.size() == 12 && i == 6 ? "; " : ", ") : "") + tuple[i].to_string();
    return s + ")";
  }
  std::string to_string() const {
    return tuple_string() + " | " + verdict + " | " + (case_id.empty() ? "-" : case_id) + " | " + koszul + " | " + asreg + " | " +
           std::to_string(bound) + (exact ? "" : "?");
  }
  using Key = std::tuple<std::string, std::string, std::string, std::string>;
  Key key() const { return {verdict, case_id.empty() ? "-" : case_id, koszul, asreg}; }
};

struct CensusResult {
  std::vector<CensusRow> rows;  // in enumeration order
  std::map<CensusRow::Key, std::size_t> aggregate;
};

namespace detail {

inline std::vector<std::vector<Scalar>> census_tuples(const CensusSpec& s) {
  std::uint64_t p = s.field.characteristic();
  if (!p || s.field.is_extension()) throw Error(ErrorCode::InvalidArgument, "scan needs a prime field GF(p)");
  std::vector<std::string> names;
  if (s.family == "C") names = {"a", "b", "c"};
  else if (s.family == "Tgh") names = {"g", "h"};
  else if (s.family == "T") names.assign(ParamTuple3D::names.begin(), ParamTuple3D::names.end());
  else throw Error(ErrorCode::InvalidArgument, "scan family must be C, T or Tgh");
  if (s.jnf && s.family != "T") throw Error(ErrorCode::InvalidArgument, "the Jordan normal form filter applies to T");
  for (const auto& [k, v] : s.values)
    if (std::find(names.begin(), names.end(), k) == names.end()) throw Error(ErrorCode::InvalidArgument, "unknown parameter " + k);
  std::vector<std::vector<Scalar>> axes;
  for (const auto& n : names) {
    auto it = s.values.find(n);
    if (it != s.values.end()) {
      std::vector<Scalar> ax;
      for (const auto& v : it->second) ax.push_back(v.lift(s.field));
      axes.push_back(ax);
    } else {
      std::vector<Scalar> ax;
      for (std::uint64_t i = 0; i < p; ++i) ax.push_back(s.field.from_int(static_cast<long>(i)));
      axes.push_back(ax);
    }
  }
  std::vector<std::vector<Scalar>> out;
  std::vector<std::size_t> idx(axes.size(), 0);
  for (const auto& ax : axes)
    if (ax.empty()) return out;
  for (;;) {
    std::vector<Scalar> t;
    for (std::size_t i = 0; i < axes.size(); ++i) t.push_back(axes[i][idx[i]]);
    bool keep = true;
    if (s.jnf) {
      ParamTuple3D p3 = ParamTuple3D::zero(s.field);
      for (std::size_t i = 0; i < 12; ++i) *p3.slots()[i] = t[i];
      keep = satisfies_jnf(p3);
    }
    if (keep) out.push_back(std::move(t));
    std::size_t i = axes.size();
    while (i > 0 && ++idx[i - 1] == axes[i - 1].size()) idx[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

inline std::string koszul_label(const KoszulVerdict& v) {
  if (v.kind == KoszulVerdict::Kind::KoszulToDegree) return "Koszul(" + std::to_string(v.bound) + ")";
  return "NotKoszul(" + std::to_string(v.witness->first) + "," + std::to_string(v.witness->second) + ")";
}

inline CensusRow census_row(const CensusSpec& s, const std::vector<Scalar>& t) {
  CensusRow r;
  r.tuple = t;
  r.bound = s.bound;
  try {
    if (s.family == "C") {
      ParamTuple2D p{t[0], t[1], t[2]};
      auto v = classify_2d_ttp(p, s.bound);
      r.verdict = v.kind == TTP2DVerdict::Kind::Unknown ? "Unknown(" + std::to_string(s.bound) + ")" : v.kind_name();
      r.exact = v.exact;
      if (v.kind == TTP2DVerdict::Kind::IsTTP) {
        try {
          auto iso = graded_iso_type_2d(p);
          r.case_id = iso.kind_name();
        } catch (const Error& e) {
          if (e.code() != ErrorCode::CharTwo) throw;
          r.case_id = "char 2";
        }
        if (s.koszul_deg > 0) r.koszul = koszul_label(koszul_check(build_C(p), s.koszul_deg));
      }
    } else if (s.family == "T") {
      ParamTuple3D p = ParamTuple3D::zero(s.field);
      for (std::size_t i = 0; i < 12; ++i) *p.slots()[i] = t[i];
      auto v = classify_3d(p, s.bound);
      r.type3d = v;
      r.verdict = v.kind == TTPType3D::Kind::UnknownBeyondBound ? "Unknown(" + std::to_string(s.bound) + ")" : v.kind_name();
      r.case_id = v.case_id;
      r.exact = v.exact;
      if (v.is_ttp()) {
        if (s.koszul_deg > 0) r.koszul = koszul_label(koszul_check(build_T(p), s.koszul_deg));
        if (s.asreg) {
          try {
            r.asreg = asreg_decide(v).regular ? "regular" : "not regular";
          } catch (const Error& e) {
            if (e.code() != ErrorCode::CharTwo) throw;
            r.asreg = "char 2";
          }
        }
      }
    } else {
      r.verdict = "Elliptic";
      if (s.koszul_deg > 0) r.koszul = koszul_label(koszul_check(build_Tgh(t[0], t[1]), s.koszul_deg));
      if (s.asreg) r.asreg = t[1].is_zero() ? "not regular" : "regular";
    }
  } catch (const Error& e) {
    r.verdict = std::string("Error(") + error_name(e.code()) + ")";
    r.koszul = r.asreg = "-";
    r.case_id.clear();
  }
  return r;
}

}  // namespace detail

/// Rows come back in enumeration order whatever the worker count; `seed`
/// only permutes the order in which workers pick tuples up.
inline CensusResult run_census(const CensusSpec& s, unsigned workers = 1, std::optional<std::uint64_t> seed = std::nullopt) {
  auto tuples = detail::census_tuples(s);
  CensusResult out;
  out.rows.resize(tuples.size());
  std::vector<std::size_t> order(tuples.size());
  std::iota(order.begin(), order.end(), 0);
  if (seed) {
    std::mt19937_64 rng(*seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < order.size();) out.rows[order[i]] = detail::census_row(s, tuples[order[i]]);
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(tuples.size(), 1))));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (const auto& r : out.rows) ++out.aggregate[r.key()];
  return out;
}

}  // namespace ttp
