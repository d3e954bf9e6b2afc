// unires: command-line driver. Exit codes: 0 success, 1 consistency failure, 2 usage.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "unires/betti/betti.hpp"
#include "unires/complex/build_g.hpp"
#include "unires/complex/ideal.hpp"
#include "unires/complex/strands.hpp"
#include "unires/complex/verify.hpp"
#include "unires/linalg/triplet_io.hpp"

using namespace unires;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int e = 2, g = 2;
  std::string field = "q";
  std::string format = "text";
  std::string output;
  std::string mode = "specialized";
  std::uint64_t seed = 1;
  int seeds = 0;
  int truncation = -1;
  int P = 0, Q = 0, p = 0, q = 0, l = 0;
  std::string kind = "auto";
  std::string complex = "f";
  bool allow_long = false;
  bool cross_check = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const Config& c, const std::string& text) {
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(c.output, std::ios::binary);
  if (!os) throw UsageError("cannot write " + c.output);
  os << text;
}

void require_size(const Config& c, const Params& p, int limit, const char* what) {
  if (!c.allow_long && (p.e > limit || p.g > limit))
    throw UsageError(std::string(what) + " with e or g above " + std::to_string(limit) +
                     " is long-running; pass --allow-long");
}

CoefficientDomain field_of(const Config& c) {
  auto k = CoefficientDomain::parse(c.field);
  if (!k.is_field()) throw UsageError("a field is required (q or fp:<prime>)");
  return k;
}

int cmd_betti(const Config& c) {
  Params p(c.e, c.g);
  require_size(c, p, 3, "betti");
  auto k = field_of(c);
  auto t = betti_table(p, k);
  std::vector<std::string> problems = reference_differences(t, reference_for(p, k));
  if (c.cross_check) {
    auto f = betti_from_fiber(p, k);
    if (f.graded() != t.graded()) problems.push_back("fiber assembly differs from the branch assembly");
    if (graded_euler(t) != graded_euler_G(p)) problems.push_back("graded Euler characteristic differs from G");
  }
  if (c.format == "json") emit(c, t.to_json().dump(2) + "\n");
  else if (c.format == "csv") emit(c, t.to_csv());
  else emit(c, t.to_text());
  for (const auto& s : problems) std::cerr << "inconsistent: " << s << '\n';
  return problems.empty() ? 0 : 1;
}

std::vector<std::uint64_t> seed_list(const Config& c) {
  std::vector<std::uint64_t> s;
  if (c.seeds > 0)
    for (int i = 1; i <= c.seeds; ++i) s.push_back(static_cast<std::uint64_t>(i));
  else
    s.push_back(c.seed);
  return s;
}

int cmd_verify(const Config& c) {
  Params p(c.e, c.g);
  require_size(c, p, 3, "verify");
  const int top = c.truncation >= 0 ? c.truncation : p.eg() + 2;
  nlohmann::json out;
  out["e"] = p.e;
  out["g"] = p.g;
  out["mode"] = c.mode;
  out["truncation"] = top;
  bool ok = true;
  auto fail = [&](const std::string& check, const std::string& witness) {
    if (ok) std::cerr << "FAIL " << check << ": " << witness << '\n';
    ok = false;
  };

  ComplexF cx(p, top);
  std::uint32_t prime = kDefaultPrime;
  auto seeds = seed_list(c);
  if (c.mode == "symbolic") {
    if (!c.allow_long && p.eg() > 4) throw UsageError("symbolic verification above eg = 4 needs --allow-long");
    auto r = verify_symbolic(cx, top);
    out["dd_zero"] = r.passed;
    if (!r.passed) fail("d*d", r.witness);
  } else {
    auto k = CoefficientDomain::parse(c.field == "q" ? "fp:" + std::to_string(kDefaultPrime) : c.field);
    if (k.kind() != DomainKind::prime_field) throw UsageError("specialized mode needs fp:<prime>");
    prime = k.characteristic();
    auto r = verify_specialized(cx, top, prime, seeds);
    out["dd_zero"] = r.passed;
    out["seeds"] = r.seeds;
    if (!r.passed) fail("d*d", r.witness);
  }
  auto gr = check_grading_and_strands(cx, top);
  out["grading"] = gr.passed;
  if (!gr.passed) fail("grading", gr.witness);
  auto id = compare_ideal(p);
  out["h0_generators"] = id.passed;
  if (!id.passed) fail("H0 generators", id.witness);

  // G at the same seeds; its top map is the expensive part beyond eg = 6
  if (p.eg() <= 6 || c.allow_long) {
    auto gen = make_generic(p);
    int good = 0;
    for (auto s : seeds) {
      std::string w;
      if (ranks_additive(build_G(p, specialize(gen, prime, s)), &w)) ++good;
      else fail("G rank additivity, seed " + std::to_string(s), w);
    }
    out["g_additive"] = std::to_string(good) + "/" + std::to_string(seeds.size());
  } else {
    out["g_additive"] = "skipped (eg > 6 without --allow-long)";
  }
  out["passed"] = ok;
  emit(c, out.dump(2) + "\n");
  return ok ? 0 : 1;
}

int cmd_strand(const Config& c) {
  Params p(c.e, c.g);
  require_size(c, p, 4, "strand");
  auto k = field_of(c);
  FiberKind kind;
  if (c.kind == "auto") kind = c.P - c.Q == p.g ? FiberKind::Mtilde : FiberKind::M;
  else if (c.kind == "n") kind = FiberKind::N;
  else if (c.kind == "m") kind = FiberKind::M;
  else if (c.kind == "mtilde") kind = FiberKind::Mtilde;
  else throw UsageError("unknown strand kind " + c.kind);
  if (kind == FiberKind::Mtilde && c.P - c.Q != p.g) throw UsageError("M~ strands need P = Q + g");
  auto s = fiber_strand(c.P, c.Q, p, k, kind);
  auto j = strand_report(s, strand_homology(s));
  j["multiplicity"] = s.multiplicity();
  nlohmann::json pos = nlohmann::json::array();
  for (const auto& t : s.terms) pos.push_back(s.position(t));
  j["positions"] = pos;
  emit(c, j.dump(2) + "\n");
  return 0;
}

int cmd_tor(const Config& c) {
  Params p(c.e, c.g);
  require_size(c, p, 4, "tor");
  auto k = field_of(c);
  auto t0 = std::chrono::steady_clock::now();
  if (c.allow_long) std::cerr << "computing Tor_{" << c.p << "," << c.q << "}(M_" << c.l << ") for e=" << p.e
                              << " g=" << p.g << " over " << k.to_string() << '\n';
  auto d = tor_dim(c.p, c.q, c.l, p, k);
  emit(c, std::to_string(d) + "\n");
  std::cerr << "elapsed " << seconds_since(t0) << " s\n";
  return 0;
}

int cmd_export(const Config& c) {
  Params p(c.e, c.g);
  require_size(c, p, 3, "export");
  if (c.output.empty()) throw UsageError("export needs --output <directory>");
  auto k = CoefficientDomain::parse(c.field == "q" ? "fp:" + std::to_string(kDefaultPrime) : c.field);
  if (k.kind() != DomainKind::prime_field) throw UsageError("export specializes over fp:<prime>");
  auto data = specialize(make_generic(p), k.characteristic(), c.seed);
  namespace fs = std::filesystem;
  fs::create_directories(c.output);
  nlohmann::json man;
  man["e"] = p.e;
  man["g"] = p.g;
  man["field"] = k.to_string();
  man["seed"] = c.seed;
  man["complex"] = c.complex;
  man["matrices"] = nlohmann::json::array();
  auto write = [&](int i, const SparseMatrix<std::int64_t>& m) {
    std::string name = "d" + std::to_string(i) + ".txt";
    std::ofstream os(fs::path(c.output) / name, std::ios::binary);
    write_triplets(os, m);
    man["matrices"].push_back({{"position", i}, {"file", name}, {"rows", m.rows()}, {"cols", m.cols()}});
  };
  if (c.complex == "g") {
    auto gx = build_G(p, data);
    for (const auto& [i, m] : gx.diffs) write(i, m);
  } else if (c.complex == "f") {
    const int top = c.truncation >= 0 ? c.truncation : p.eg() + 2;
    ComplexF cx(p, top);
    for (int i = 1; i <= top; ++i) write(i, differential_F(cx, i, data));
  } else {
    throw UsageError("--complex is f or g");
  }
  std::ofstream(fs::path(c.output) / "manifest.json", std::ios::binary) << man.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"unires: complexes, strand homology, Tor and Betti tables"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s) {
    s->add_option("--e", c.e, "rank of E")->check(CLI::PositiveNumber);
    s->add_option("--g", c.g, "rank of G")->check(CLI::PositiveNumber);
    s->add_option("--field", c.field, "q or fp:<prime>");
    s->add_option("--output,-o", c.output, "output path");
    s->add_flag("--allow-long", c.allow_long, "permit long-running sizes");
  };
  auto* betti = app.add_subcommand("betti", "graded Betti table");
  common(betti);
  betti->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv", "text"}));
  betti->add_flag("--cross-check", c.cross_check, "also assemble the table from raw fiber homology");

  auto* verify = app.add_subcommand("verify", "d*d = 0, grading, H0 generators, rank additivity of G");
  common(verify);
  verify->add_option("--mode", c.mode)->check(CLI::IsMember({"symbolic", "specialized"}));
  auto* seed = verify->add_option("--seed", c.seed, "one specialization seed");
  auto* seeds = verify->add_option("--seeds", c.seeds, "use seeds 1..N")->check(CLI::PositiveNumber);
  seed->excludes(seeds);
  verify->add_option("--truncation", c.truncation, "last position (default eg+2)")->check(CLI::NonNegativeNumber);

  auto* strand = app.add_subcommand("strand", "fiber strand homology as JSON");
  common(strand);
  strand->add_option("--P", c.P)->required();
  strand->add_option("--Q", c.Q)->required();
  strand->add_option("--kind", c.kind)->check(CLI::IsMember({"auto", "n", "m", "mtilde"}));

  auto* tor = app.add_subcommand("tor", "dim Tor_{p,q}(M_l)");
  common(tor);
  tor->add_option("--p", c.p)->required();
  tor->add_option("--q", c.q)->required();
  tor->add_option("--l", c.l)->required();

  auto* exp = app.add_subcommand("export", "specialized differentials as triplet files plus manifest");
  common(exp);
  exp->add_option("--seed", c.seed);
  exp->add_option("--complex", c.complex)->check(CLI::IsMember({"f", "g"}));
  exp->add_option("--truncation", c.truncation)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (*betti) return cmd_betti(c);
    if (*verify) return cmd_verify(c);
    if (*strand) return cmd_strand(c);
    if (*tor) return cmd_tor(c);
    if (*exp) return cmd_export(c);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
