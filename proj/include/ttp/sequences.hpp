#pragma once

#include <optional>
#include <vector>

#include "ttp/scalars.hpp"

namespace ttp {

struct SequenceQuad {
  int n = 0;
  Scalar e, f, g, h;
};

/// Values e_n, f_n, g_n, h_n at (a, b) for n = 0..n_max.
inline std::vector<SequenceQuad> efgh_table(const Scalar& a, const Scalar& b, int n_max) {
  if (n_max < 0) throw Error(ErrorCode::InvalidArgument, "negative index");
  Field F = join(a.field(), b.field());
  std::vector<SequenceQuad> out;
  Scalar e = F.one(), f = F.one();
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      Scalar e2 = b * e + f;
      Scalar f2 = -a * e + f;
      e = e2;
      f = f2;
    }
    out.push_back(SequenceQuad{n, e, f, (1 - b) * e - f, -a * e});
  }
  return out;
}

inline SequenceQuad efgh(const Scalar& a, const Scalar& b, int n) { return efgh_table(a, b, n).back(); }

struct NonvanishingReport {
  int bound = 0;
  std::optional<int> zero_at;  // first n in 1..bound with f_n(a, b) = 0
  // The scan decides "f_n != 0 for every n": over a finite field the pair
  // (e_n, f_n) is eventually periodic with period bounded by the field size squared.
  bool exact = false;

  bool all_nonzero() const { return !zero_at; }
};

inline NonvanishingReport fn_nonvanishing(const Scalar& a, const Scalar& b, int N) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "bound must be at least 1");
  NonvanishingReport rep;
  rep.bound = N;
  Field F = join(a.field(), b.field());
  Scalar e = F.one(), f = F.one();
  for (int n = 1; n <= N; ++n) {
    Scalar e2 = b * e + f;
    f = -a * e + f;
    e = e2;
    if (f.is_zero()) {
      rep.zero_at = n;
      rep.exact = true;
      return rep;
    }
  }
  if (a.is_zero()) {
    rep.exact = true;  // f_n = 1 identically
  } else if (std::uint64_t p = F.characteristic()) {
    unsigned __int128 size = F.is_extension() ? static_cast<unsigned __int128>(p) * p : p;
    rep.exact = static_cast<unsigned __int128>(N) >= size * size;
  }
  return rep;
}

}  // namespace ttp
