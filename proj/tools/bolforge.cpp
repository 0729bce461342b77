// bolforge: build and certify the simple right Bol loops of exponent 2
// (order 96 and the 96*16^k family), serialize the tables, and re-verify
// them from files.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "bolforge/baseg.hpp"
#include "bolforge/bigg.hpp"
#include "bolforge/certificate.hpp"
#include "bolforge/io.hpp"
#include "bolforge/loopcore.hpp"
#include "bolforge/s5mod.hpp"

namespace {

using namespace bolforge;

struct Options {
  std::uint64_t seed = 1;
  int workers = 1;
  bool timings = false;
  std::string meta;
};

void emit(const Certificate &cert, const Options &opt) {
  std::string text = cert.to_json(opt.timings).dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  if (!opt.meta.empty())
    write_text_file(opt.meta, text);
}

struct BolSpec {
  bool exhaustive = false;
  std::uint64_t samples = 1000000;
};

BolSpec parse_bol(const std::string &s) {
  BolSpec b;
  if (s == "exhaustive") {
    b.exhaustive = true;
    return b;
  }
  if (s.rfind("sample=", 0) == 0) {
    b.samples = std::stoull(s.substr(7));
    return b;
  }
  throw CLI::ValidationError("--bol expects 'exhaustive' or 'sample=N'");
}

int run_certify_base(const Options &opt) {
  Certificate cert("certify-base");
  cert.params()["command"] = "certify-base";
  cert.params()["seed"] = opt.seed;

  GroupG gg = build_g();
  cert.absorb(certify_relations(gg), "");
  {
    GroupEnum gp = derived_subgroup(gg.G);
    GroupEnum gpp = derived_subgroup(gp);
    cert.add("Gpp_equals_Gprime", gpp.order() == gp.order());
  }
  cert.absorb(certify_star(gg), "star_");
  cert.absorb(certify_24(gg), "l24_");

  EnumOracle oracle(gg.G);
  Certificate fc("folder");
  Folder f = base_folder(gg, oracle, &fc);
  cert.absorb(fc, "folder_");
  cert.absorb(verify_folder(f), "kverify_");
  LoopTable t = build_loop(f);
  cert.absorb(table_checks(t), "table_");
  BolMode mode;
  mode.exhaustive = true;
  cert.absorb(check_bol(t, mode, opt.workers), "bol_");
  SimplicityReport rep = is_simple(t, opt.workers);
  cert.add("loop_simple", rep.simple,
           rep.simple ? "all 95 seeds give the full block"
                      : "witness " + std::to_string(rep.witness));
  std::uint64_t rmlt = mult_group_order(t, MultKind::Right);
  cert.add("right_mult_group_3840", rmlt == 3840, std::to_string(rmlt));
  cert.absorb(uniqueness_probe(gg), "uniq_");

  cert.params()["group_order"] = gg.G.order();
  cert.params()["loop_order"] = t.n;
  cert.params()["simple"] = rep.simple;
  emit(cert, opt);
  return cert.pass() ? 0 : 1;
}

int run_certify_modules(const Options &opt) {
  GroupG gg = build_g();
  Certificate cert = certify_modules(gg);
  cert.params()["command"] = "certify-modules";
  cert.params()["seed"] = opt.seed;
  emit(cert, opt);
  return cert.pass() ? 0 : 1;
}

int run_build(const Options &opt, int k, const std::string &variant,
              const std::string &out) {
  Certificate cert("build");
  cert.params()["command"] = "build";
  cert.params()["k"] = k;
  cert.params()["variant"] = variant;
  cert.params()["seed"] = opt.seed;
  if (!out.empty())
    cert.params()["out"] = out;

  Variant var = variant == "split" ? Variant::Split : Variant::Twisted;
  GroupG gg = build_g();
  USpace u = build_u(gg);
  PsiMap psi = build_psi(gg, u);
  BigGroup bg = build_gg(gg, u, k);
  cert.absorb(bg.cert, "gg_");
  Certificate cc("census");
  involution_census(bg, &cc);
  cert.absorb(cc, "");
  if (k == 1)
    cert.absorb(socle_check(bg), "");
  FamilyFolder ff = family_folder(bg, var, &psi);
  cert.absorb(ff.cert, "folder_");
  cert.absorb(check_general(make_context_family(bg, ff)), "p35_");

  if (k == 1) {
    SdOracle oracle(bg.sd);
    Folder f = as_folder(bg, ff, oracle);
    cert.absorb(verify_folder(f), "kverify_");
    LoopTable t = build_loop(f);
    cert.absorb(table_checks(t), "table_");
    BolMode mode;
    mode.exhaustive = false;
    mode.samples = 1000000;
    mode.seed = opt.seed;
    cert.absorb(check_bol(t, mode, opt.workers), "bol_");
    cert.params()["loop_order"] = t.n;
    if (var == Variant::Split) {
      // K[1] sits in the kernel fiber of the module-deletion quotient;
      // its normal closure measures the kernel block.
      auto block = normal_closure_block(t, 1);
      cert.add("split_kernel_block_16", block.size() == 16,
               "measured " + std::to_string(block.size()) + " = 16^k");
      cert.params()["kernel_block_size"] = block.size();
    }
    if (!out.empty())
      ltab_write(t, out);
  }
  emit(cert, opt);
  return cert.pass() ? 0 : 1;
}

int run_verify(const Options &opt, const std::string &file,
               const BolSpec &bol) {
  LoopTable t = ltab_read(file);
  Certificate cert("verify");
  cert.params()["command"] = "verify";
  cert.params()["file"] = file;
  cert.params()["order"] = t.n;
  cert.params()["seed"] = opt.seed;
  cert.params()["bol"] =
      bol.exhaustive ? std::string("exhaustive")
                     : "sample=" + std::to_string(bol.samples);
  cert.absorb(table_checks(t), "table_");
  BolMode mode;
  mode.exhaustive = bol.exhaustive;
  mode.samples = bol.samples;
  mode.seed = opt.seed;
  cert.absorb(check_bol(t, mode, opt.workers), "bol_");
  emit(cert, opt);
  return cert.pass() ? 0 : 1;
}

int run_simplicity(const Options &opt, const std::string &file) {
  LoopTable t = ltab_read(file);
  Certificate cert("simplicity");
  cert.params()["command"] = "simplicity";
  cert.params()["file"] = file;
  cert.params()["order"] = t.n;
  SimplicityReport rep = is_simple(t, opt.workers);
  cert.add("simple", rep.simple,
           rep.simple ? "all seeds give the full block"
                      : "witness x=" + std::to_string(rep.witness) +
                            ", block size " +
                            std::to_string(rep.block_size));
  cert.params()["simple"] = rep.simple;
  if (!rep.simple) {
    cert.params()["witness"] = rep.witness;
    cert.params()["block_size"] = rep.block_size;
  }
  emit(cert, opt);
  return cert.pass() ? 0 : 1;
}

int run_counterexample(const Options &opt) {
  Certificate cert("counterexample");
  cert.params()["command"] = "counterexample";
  GroupG gg = build_g();
  ControlGroup ctl = build_control(gg);
  cert.absorb(ctl.cert, "");

  Certificate cg = check_general(make_context_control(ctl));
  for (const auto &chk : cg.checks()) {
    if (chk.name == "e_L_involutions_in_J")
      cert.add("expected_e_fails", !chk.pass, chk.witness);
    else
      cert.add(chk.name, chk.pass, chk.witness);
  }

  SdOracle oracle(ctl.sd);
  Folder f;
  f.mul = &oracle;
  for (const auto &h : ctl.H)
    f.hset.push_back(ctl.sd.flat(h));
  {
    std::vector<std::uint64_t> hs = f.hset;
    std::sort(hs.begin(), hs.end());
    f.in_h = [hs](std::uint64_t a) {
      return std::binary_search(hs.begin(), hs.end(), a);
    };
  }
  for (const auto &e : ctl.K)
    f.k.push_back(ctl.sd.flat(e));
  for (const auto &g : ctl.sd.base().gens())
    f.ambient_gens.push_back(ctl.sd.flat(
        SdElt{static_cast<std::uint16_t>(ctl.sd.base().idx(g)), 0}));
  for (int b = 0; b < 5; ++b)
    f.ambient_gens.push_back(ctl.sd.flat(SdElt{0, 1u << b}));
  Certificate fv = verify_folder(f);
  for (const auto &chk : fv.checks()) {
    if (chk.name == "pairwise_transversal")
      cert.add("expected_pairwise_fails", !chk.pass, chk.witness);
    else
      cert.add("folder_" + chk.name, chk.pass, chk.witness);
  }

  emit(cert, opt);
  return cert.pass() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"bolforge: certified simple right Bol loops of exponent 2"};
  app.require_subcommand(1);
  app.fallthrough(); // global options may follow the subcommand

  Options opt;
  app.add_option("--seed", opt.seed, "RNG seed for sampled checks")
      ->envname("BOLFORGE_SEED");
  app.add_option("--workers", opt.workers, "worker threads for scans")
      ->check(CLI::Range(1, 256));
  app.add_flag("--timings", opt.timings,
               "emit real timings (breaks byte-identical output)");
  app.add_option("--meta", opt.meta, "also write the JSON certificate here");

  auto *certify_base =
      app.add_subcommand("certify-base", "build and certify the order-96 loop");
  auto *certify_modules = app.add_subcommand(
      "certify-modules", "certify the module-theoretic facts");

  auto *build = app.add_subcommand("build", "build a family folder/loop");
  int k = 1;
  std::string variant = "twisted", out;
  build->add_option("--k", k, "number of module copies")
      ->check(CLI::Range(1, 2))
      ->required();
  build->add_option("--variant", variant, "split or twisted")
      ->check(CLI::IsMember({"split", "twisted"}))
      ->required();
  build->add_option("--out", out, "LTAB output path (k = 1 only)");

  auto *verify = app.add_subcommand("verify", "re-validate a table file");
  std::string verify_file, bol_str = "sample=1000000";
  verify->add_option("file", verify_file, "LTAB file")->required();
  verify->add_option("--bol", bol_str, "exhaustive or sample=N");

  auto *simplicity =
      app.add_subcommand("simplicity", "block analysis of a table file");
  std::string simp_file;
  simplicity->add_option("file", simp_file, "LTAB file")->required();

  auto *counterexample = app.add_subcommand(
      "counterexample",
      "split-extension negative control; exits 0 when the expected "
      "hypothesis (e) and pairwise failures occur");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*certify_base)
      return run_certify_base(opt);
    if (*certify_modules)
      return run_certify_modules(opt);
    if (*build) {
      if (k != 1 && !out.empty()) {
        std::fprintf(stderr, "--out requires --k 1 (tables are only "
                             "materialized at k = 1)\n");
        return 2;
      }
      return run_build(opt, k, variant, out);
    }
    if (*verify)
      return run_verify(opt, verify_file, parse_bol(bol_str));
    if (*simplicity)
      return run_simplicity(opt, simp_file);
    if (*counterexample)
      return run_counterexample(opt);
  } catch (const CLI::ValidationError &e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception &e) {
    std::string msg = e.what();
    bool io = msg.find("cannot open") != std::string::npos ||
              msg.find("write failed") != std::string::npos ||
              msg.find("not an ltab") != std::string::npos ||
              msg.find("bad cell") != std::string::npos ||
              msg.find("bad order") != std::string::npos;
    std::fprintf(stderr, "error: %s\n", msg.c_str());
    return io ? 2 : 1;
  }
  return 2;
}
