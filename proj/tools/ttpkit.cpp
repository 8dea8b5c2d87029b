#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ttp/census.hpp"
#include "ttp/job.hpp"
#include "ttp/report.hpp"

using namespace ttp;

namespace {

enum Exit { kOk = 0, kInternal = 1, kParse = 2, kUnknown = 3, kConstraint = 4 };

struct Flags {
  std::string job_file;
  std::string field;
  std::string family;
  std::vector<std::string> params;
  std::vector<std::string> ranges;
  std::vector<std::string> relations;
  std::string alphabet;
  std::string weights;
  bool zero_missing = false;
  bool jnf = false;
  bool evidence = false;
  std::optional<int> maxdeg, homdeg, bound;
  int koszul_deg = 4;
  unsigned workers = 0;
  std::optional<std::uint64_t> seed;
  std::string out;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::pair<std::string, std::string> key_value(const std::string& s) {
  auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::ParseError, "at position 0: 'name=value' expected in '" + s + "'");
  return {s.substr(0, eq), s.substr(eq + 1)};
}

JobDocument build_job(const Flags& f) {
  JobDocument d;
  if (!f.job_file.empty()) {
    std::ifstream in(f.job_file);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read " + f.job_file);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      d = JobDocument::from_json(ss.str());
    } catch (const Error& e) {
      throw Error(e.code(), f.job_file + ": " + e.what());
    }
  }
  if (!f.field.empty()) d.field = parse_field(f.field);
  if (!f.family.empty()) {
    JobDocument::param_names(f.family);
    d.family = f.family;
  }
  for (const auto& item : f.params)
    for (const auto& kv : split(item, ',')) d.params[key_value(kv).first] = key_value(kv).second;
  for (const auto& item : f.ranges) {
    auto [k, v] = key_value(item);
    d.ranges[k] = split(v, ',');
  }
  for (const auto& r : f.relations) d.relations.push_back(r);
  if (!f.alphabet.empty()) d.alphabet = split(f.alphabet, ',');
  if (!f.weights.empty()) {
    d.weights.clear();
    for (const auto& w : split(f.weights, ',')) {
      try {
        d.weights.push_back(std::stoi(w));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "at position 0: integer weight expected, got '" + w + "'");
      }
    }
  }
  d.zero_missing = d.zero_missing || f.zero_missing;
  d.jnf = d.jnf || f.jnf;
  if (f.maxdeg) d.options.maxdeg = *f.maxdeg;
  if (f.homdeg) d.options.homdeg = *f.homdeg;
  if (f.bound) d.options.bound = *f.bound;
  if (d.options.maxdeg < 1 || d.options.homdeg < 1 || d.options.bound < 1)
    throw Error(ErrorCode::ConstraintError, "degree bounds must be positive");
  return d;
}

std::string params_string(const std::string& cmd, const JobDocument& d) {
  if (cmd == "scan") {
    std::string s = d.jnf ? "jnf" : "all";
    for (const auto& [k, v] : d.ranges) {
      s += "; " + k + " in {";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
      s += "}";
    }
    return s;
  }
  if (d.family == "C") return d.tuple2d().to_string();
  if (d.family == "T") return d.tuple3d().to_string();
  if (d.family == "Tgh") {
    auto [g, h] = d.gh();
    return "(" + g.to_string() + ", " + h.to_string() + ")";
  }
  std::string s;
  for (std::size_t i = 0; i < d.relations.size(); ++i) s += (i ? "; " : "") + d.relations[i];
  return s;
}

Report header(const std::string& cmd, const JobDocument& d) {
  Report r;
  r.line("ttpkit " + cmd);
  r.line("family " + d.family + " over " + d.field.name() + ", parameters " + params_string(cmd, d));
  r.block.set("command", cmd);
  r.block.set("family", d.family);
  r.block.set("field", d.field.name());
  r.block.set("params", params_string(cmd, d));
  return r;
}

// T(g,h) is the elliptic tuple with a = 1, B = 2, c = h, C = g.
ParamTuple3D tuple_of(const JobDocument& d) {
  if (d.family == "T") return d.tuple3d();
  if (d.family == "Tgh") {
    auto [g, h] = d.gh();
    Field k = join(g.field(), h.field());
    return elliptic_tuple(k.one(), k.from_int(2), h, g);
  }
  throw Error(ErrorCode::Unsupported, "this command needs family T or Tgh");
}

void list(Report& r, const std::string& key, const std::vector<std::string>& items) {
  r.block.set(key + ".count", items.size());
  for (std::size_t i = 0; i < items.size(); ++i) r.block.set(key + "." + std::to_string(i + 1), items[i]);
}

int cmd_classify(const JobDocument& d, Report& r) {
  int bound = d.options.bound;
  if (d.family == "C") {
    auto p = d.tuple2d();
    auto v = classify_2d_ttp(p, bound);
    std::string verdict = v.kind == TTP2DVerdict::Kind::Unknown ? "Unknown(" + std::to_string(bound) + ")" : v.kind_name();
    r.line("verdict: " + verdict + (v.exact ? "" : " (certified to N = " + std::to_string(bound) + ")"));
    r.block.set("verdict", verdict);
    r.block.set("case", "-");
    r.block.set("bound", bound);
    r.block.set("exact", v.exact);
    r.block.set("normalized", v.normalized.to_string());
    if (v.zero_at) r.block.set("zero_at", *v.zero_at);
    if (v.relation) {
      r.line("relation: " + v.relation->to_string() + " = 0");
      r.block.set("relation", v.relation->to_string());
    }
    if (v.dependence) {
      r.line("dependence among x^i z^j: " + v.dependence->to_string());
      r.block.set("dependence", v.dependence->to_string());
    }
    if (v.hilbert) {
      r.line("Hilbert dims: " + v.hilbert->to_string());
      r.block.set("hilbert", v.hilbert->to_string());
    }
    if (v.kind == TTP2DVerdict::Kind::IsTTP) {
      try {
        auto iso = graded_iso_type_2d(p);
        r.line("graded isomorphism type: " + iso.kind_name() + ", N = " + iso.witness.N.to_string());
        r.block.set("case", iso.kind_name());
        r.block.set("congruence.N", iso.witness.N.to_string());
        r.block.set("congruence.verified", congruence_verify(iso.witness));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::CharTwo) throw;
        r.line("graded isomorphism type: not available in characteristic 2");
      }
    }
    for (const auto& n : v.notes) r.line("  " + n);
    list(r, "note", v.notes);
    return v.kind == TTP2DVerdict::Kind::Unknown ? kUnknown : kOk;
  }
  if (d.family == "raw") throw Error(ErrorCode::Unsupported, "classify needs family C, T or Tgh");
  auto t = classify_3d(tuple_of(d), bound);
  bool unknown = t.kind == TTPType3D::Kind::UnknownBeyondBound;
  std::string verdict = unknown ? "Unknown(" + std::to_string(bound) + ")" : t.kind_name();
  r.line("verdict: " + verdict + (t.case_id.empty() ? "" : " case " + t.case_id));
  r.line("normal form: " + t.normal_form.to_string());
  r.block.set("verdict", verdict);
  r.block.set("case", t.case_id.empty() ? "-" : t.case_id);
  r.block.set("bound", bound);
  r.block.set("exact", t.exact);
  r.block.set("normal_form", t.normal_form.to_string());
  std::vector<std::string> trace;
  for (const auto& s : t.trace) trace.push_back(s.to_string());
  for (const auto& s : trace) r.line("  " + s);
  list(r, "trace", trace);
  for (const auto& w : t.witnesses) r.line("witness: " + w);
  list(r, "witness", t.witnesses);
  if (t.elliptic) {
    const auto& e = *t.elliptic;
    r.line("elliptic form: beta = " + e.beta.to_string() + ", gamma = " + e.gamma.to_string() + ", g = " + e.g.to_string() +
           ", h = " + e.h.to_string());
    r.block.set("elliptic.beta", e.beta.to_string());
    r.block.set("elliptic.gamma", e.gamma.to_string());
    r.block.set("elliptic.g", e.g.to_string());
    r.block.set("elliptic.h", e.h.to_string());
  }
  return unknown ? kUnknown : kOk;
}

int cmd_gb(const JobDocument& d, Report& r) {
  auto pres = d.presentation();
  auto c = complete(pres.system(), d.options.maxdeg);
  const auto& al = *pres.alphabet;
  std::vector<std::string> rules;
  for (const auto& rule : c.system.rules()) rules.push_back(word_string(al, rule.high) + " -> " + rule.tail.to_string());
  r.line("rules after completion to degree " + std::to_string(d.options.maxdeg) + ":");
  for (const auto& s : rules) r.line("  " + s);
  r.block.set("completed_to", d.options.maxdeg);
  r.block.set("added", c.added.size());
  list(r, "rule", rules);
  return kOk;
}

int cmd_hilbert(const JobDocument& d, Report& r) {
  auto pres = d.presentation();
  auto h = hilbert(pres.completed(d.options.maxdeg), d.options.maxdeg);
  r.line("dims through degree " + std::to_string(d.options.maxdeg) + ": " + h.to_string());
  r.block.set("maxdeg", d.options.maxdeg);
  r.block.set("hilbert", h.to_string());
  return kOk;
}

int cmd_resolve(const JobDocument& d, Report& r) {
  auto pres = d.presentation();
  int N = d.options.maxdeg, H = d.options.homdeg;
  auto rs = pres.completed(N);
  auto res = minimal_resolution(rs, H, N);
  r.line("Betti numbers (i, j, b): " + res.betti.to_string());
  r.line(res.truncated ? "resolution continues past the bounds" : "resolution is finite");
  r.block.set("maxdeg", N);
  r.block.set("homdeg", H);
  r.block.set("betti", res.betti.to_string());
  r.block.set("truncated", res.truncated);
  if (d.family == "Tgh") {
    auto [g, h] = d.gh();
    bool zero = h.is_zero();
    auto cx = zero ? resolution_P(g, N) : resolution_Q(g, h, N);
    auto prof = zero ? exactness_profile(cx, true, N, static_cast<std::size_t>(H)) : exactness_profile(cx, true, N);
    bool comp = compose_check(cx, N);
    auto bt = BettiTable::of(zero ? cx.materialize(static_cast<std::size_t>(H)) : cx);
    r.line(std::string(zero ? "P" : "Q") + " complex: d^2 = 0 " + (comp ? "holds" : "fails") + ", augmented exactness " +
           (prof.resolves_k(true) ? "holds" : "fails: " + prof.to_string()));
    r.block.set("complex", zero ? "P" : "Q");
    r.block.set("complex.compose", comp);
    r.block.set("complex.exact", prof.resolves_k(true));
    r.block.set("complex.betti_match", bt == res.betti);
  }
  return kOk;
}

int cmd_koszul(const JobDocument& d, Report& r) {
  auto v = koszul_check(d.presentation(), d.options.maxdeg);
  std::string k = detail::koszul_label(v);
  r.line("verdict: " + k);
  r.line("Betti numbers (i, j, b): " + v.betti.to_string());
  r.block.set("verdict", k);
  r.block.set("bound", v.bound);
  if (v.witness) r.block.set("witness", "b_{" + std::to_string(v.witness->first) + "," + std::to_string(v.witness->second) + "} = " +
                                            std::to_string(v.betti.at(v.witness->first, v.witness->second)));
  if (v.hilbert_identity) {
    r.line(std::string("H(t) H^!(-t) = 1 through the bound: ") + (*v.hilbert_identity ? "yes" : "no"));
    r.block.set("hilbert_identity", *v.hilbert_identity);
  }
  r.block.set("betti", v.betti.to_string());
  return kOk;
}

int cmd_yoneda(const JobDocument& d, Report& r) {
  Scalar g, h;
  if (d.family == "Tgh") {
    std::tie(g, h) = d.gh();
  } else {
    auto t = classify_3d(tuple_of(d), d.options.bound);
    if (t.kind != TTPType3D::Kind::Elliptic || !t.elliptic)
      throw Error(ErrorCode::ConstraintError, "Yoneda presentation needs an elliptic algebra, got " + t.kind_name());
    g = t.elliptic->g;
    h = t.elliptic->h;
  }
  auto rep = yoneda_verify(g, h, d.options.homdeg);
  r.line("g = " + g.to_string() + ", h = " + h.to_string());
  r.block.set("g", g.to_string());
  r.block.set("h", h.to_string());
  r.block.set("bound", rep.bound);
  if (rep.h_zero) {
    r.line(std::string("bigraded dims of the presented algebra match the resolution: ") + (rep.bigraded_match ? "yes" : "no"));
    r.line(std::string("rank-one tail from homological degree 3: ") + (rep.tail_dims ? "yes" : "no"));
    r.block.set("bigraded_match", rep.bigraded_match);
    r.block.set("tail_dims", rep.tail_dims);
    r.block.set("betti", rep.betti.to_string());
  } else {
    r.line(std::string("dual relations match the six quadratics: ") + (rep.dual_relations_match ? "yes" : "no"));
    r.line(std::string("square normal form: ") + (rep.square_normal_form ? "yes" : "no"));
    r.block.set("dual_relations_match", rep.dual_relations_match);
    r.block.set("square_normal_form", rep.square_normal_form);
  }
  r.block.set("ok", rep.ok());
  for (const auto& n : rep.notes) r.line("  " + n);
  list(r, "note", rep.notes);
  return kOk;
}

int cmd_asreg(const JobDocument& d, Report& r, bool evidence) {
  auto t = classify_3d(tuple_of(d), d.options.bound);
  r.block.set("type", t.kind_name());
  r.block.set("case", t.case_id.empty() ? "-" : t.case_id);
  if (t.kind == TTPType3D::Kind::UnknownBeyondBound) {
    r.line("verdict: Unknown(" + std::to_string(d.options.bound) + "), classification undecided");
    r.block.set("verdict", "Unknown(" + std::to_string(d.options.bound) + ")");
    return kUnknown;
  }
  auto v = asreg_decide(t, evidence, d.options.maxdeg);
  r.line(std::string("verdict: ") + (v.regular ? "regular" : "not regular"));
  r.line(v.clause);
  for (const auto& s : v.reasons) r.line("  " + s);
  r.block.set("verdict", v.regular ? "regular" : "not regular");
  r.block.set("clause", v.clause);
  list(r, "reason", v.reasons);
  if (v.witness) {
    r.line(*v.witness);
    r.block.set("witness", *v.witness);
  }
  if (v.gorenstein) {
    r.line(std::string("Gorenstein profile: ") + (v.gorenstein->clean ? "single k" : "not a single k") + ", length " +
           std::to_string(v.gorenstein->length));
    r.block.set("gorenstein.clean", v.gorenstein->clean);
    r.block.set("gorenstein.length", v.gorenstein->length);
    if (v.gorenstein->top_degree) r.block.set("gorenstein.top_degree", *v.gorenstein->top_degree);
  }
  if (v.koszul) {
    r.line("Koszul evidence: " + detail::koszul_label(*v.koszul));
    r.block.set("koszul", detail::koszul_label(*v.koszul));
  }
  return kOk;
}

int cmd_sequences(const JobDocument& d, Report& r) {
  Scalar a, b;
  if (d.family == "C") {
    auto p = d.tuple2d();
    a = p.a * p.c;
    b = p.b;
  } else if (d.family == "T") {
    auto p = d.tuple3d();
    a = p.a;
    b = p.d;
  } else {
    throw Error(ErrorCode::Unsupported, "sequences needs family C (at (ac, b)) or T (at (a, d))");
  }
  r.line("e_n, f_n, g_n, h_n at (" + a.to_string() + ", " + b.to_string() + "):");
  r.block.set("at", "(" + a.to_string() + ", " + b.to_string() + ")");
  for (const auto& q : efgh_table(a, b, d.options.maxdeg)) {
    std::string row = q.e.to_string() + ", " + q.f.to_string() + ", " + q.g.to_string() + ", " + q.h.to_string();
    r.line("  n = " + std::to_string(q.n) + ": " + row);
    r.block.set("efgh." + std::to_string(q.n), row);
  }
  auto nv = fn_nonvanishing(a, b, d.options.bound);
  r.line(nv.zero_at ? "f_" + std::to_string(*nv.zero_at) + " = 0"
                    : "f_n != 0 for n <= " + std::to_string(nv.bound) + (nv.exact ? ", and so for all n" : ""));
  r.block.set("bound", nv.bound);
  r.block.set("zero_at", nv.zero_at ? std::to_string(*nv.zero_at) : "none");
  r.block.set("exact", nv.exact);
  return kOk;
}

int cmd_scan(const JobDocument& d, Report& r, const Flags& f) {
  CensusSpec s;
  s.field = d.field;
  s.family = d.family;
  s.jnf = d.jnf;
  s.bound = d.options.bound;
  s.koszul_deg = f.koszul_deg;
  JobDocument::param_names(d.family);
  if (!d.params.empty()) throw Error(ErrorCode::ParseError, "scan takes ranges (--range name=v1,v2), not parameters");
  for (const auto& [k, vals] : d.ranges) {
    auto& ax = s.values[k];
    for (const auto& v : vals) {
      try {
        ax.push_back(parse_scalar(v, d.field));
      } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, "range '" + k + "': " + e.what());
      }
    }
  }
  unsigned w = f.workers ? f.workers : std::max(1u, std::thread::hardware_concurrency());
  auto res = run_census(s, w, f.seed);
  r.line("rows (tuple | verdict | case | koszul | asreg | bound):");
  std::vector<std::string> rows, agg;
  for (const auto& row : res.rows) rows.push_back(row.to_string());
  for (const auto& s2 : rows) r.line("  " + s2);
  r.line("counts (verdict | case | koszul | asreg):");
  for (const auto& [k, n] : res.aggregate) {
    auto [v, c, ko, as] = k;
    agg.push_back(v + " | " + c + " | " + ko + " | " + as + " | " + std::to_string(n));
    r.line("  " + agg.back());
  }
  r.block.set("bound", s.bound);
  r.block.set("koszul_deg", s.koszul_deg);
  list(r, "row", rows);
  list(r, "count", agg);
  return kOk;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("job", f.job_file, "JSON job document")->check(CLI::ExistingFile);
  sub->add_option("--field", f.field, "QQ, GF(p), or either followed by (sqrt(m))");
  sub->add_option("--family", f.family, "C, T, Tgh or raw");
  sub->add_option("-p,--param", f.params, "name=value, repeatable or comma separated");
  sub->add_option("--relation", f.relations, "raw relation, repeatable");
  sub->add_option("--alphabet", f.alphabet, "raw generators, comma separated");
  sub->add_option("--weights", f.weights, "raw generator degrees, comma separated");
  sub->add_flag("--zero-missing", f.zero_missing, "missing parameters are 0");
  sub->add_option("--maxdeg", f.maxdeg, "Groebner / Hilbert / internal degree bound (8)");
  sub->add_option("--homdeg", f.homdeg, "homological degree bound (6)");
  sub->add_option("--bound", f.bound, "f_n scan bound N (50)");
  sub->add_option("--out", f.out, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded twisted tensor products of polynomial rings"};
  app.require_subcommand(1);
  Flags f;
  const std::vector<std::pair<std::string, std::string>> cmds = {
      {"classify", "decide the twisted tensor product type"},
      {"gb", "Groebner basis to --maxdeg"},
      {"hilbert", "graded dimensions to --maxdeg"},
      {"resolve", "minimal resolution of the trivial module"},
      {"koszul", "Koszul check to --maxdeg"},
      {"yoneda", "check the Yoneda algebra presentation"},
      {"asreg", "Artin-Schelter regularity"},
      {"sequences", "the e, f, g, h recurrences"},
      {"scan", "census over a finite field"}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : cmds) {
    subs[name] = app.add_subcommand(name, help);
    add_common(subs[name], f);
  }
  subs["asreg"]->add_flag("--evidence", f.evidence, "also compute the Gorenstein profile or Koszul verdict");
  subs["scan"]->add_option("--range", f.ranges, "name=v1,v2,... restricts a parameter, repeatable");
  subs["scan"]->add_flag("--jnf", f.jnf, "T only: keep tuples in Jordan normal form");
  subs["scan"]->add_option("--koszul-deg", f.koszul_deg, "Koszul column degree, 0 to skip (4)");
  subs["scan"]->add_option("--workers", f.workers, "worker threads (all cores)");
  subs["scan"]->add_option("--seed", f.seed, "shuffle the work order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  std::string cmd = app.get_subcommands().front()->get_name();
  int status = kOk;
  Report r;
  try {
    JobDocument d = build_job(f);
    if (cmd != "scan") d.validate();
    r = header(cmd, d);
    if (cmd == "classify") status = cmd_classify(d, r);
    else if (cmd == "gb") status = cmd_gb(d, r);
    else if (cmd == "hilbert") status = cmd_hilbert(d, r);
    else if (cmd == "resolve") status = cmd_resolve(d, r);
    else if (cmd == "koszul") status = cmd_koszul(d, r);
    else if (cmd == "yoneda") status = cmd_yoneda(d, r);
    else if (cmd == "asreg") status = cmd_asreg(d, r, f.evidence);
    else if (cmd == "sequences") status = cmd_sequences(d, r);
    else status = cmd_scan(d, r, f);
  } catch (const Error& e) {
    std::cerr << "ttpkit " << cmd << ": " << e.what() << "\n";
    return e.code() == ErrorCode::ParseError ? kParse : kConstraint;
  } catch (const std::exception& e) {
    std::cerr << "ttpkit " << cmd << ": " << e.what() << "\n";
    return kInternal;
  }
  std::string text = r.render();
  if (f.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream o(f.out);
    if (!o) {
      std::cerr << "ttpkit: cannot write " << f.out << "\n";
      return kInternal;
    }
    o << text;
  }
  return status;
}
