// Command-line front end: every verification suite, sweep, and report
// emitter in one binary. Exit codes: 0 success, 1 assertion or regression
// failure, 2 usage error.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "shiftconv/arith.hpp"
#include "shiftconv/char_sum.hpp"
#include "shiftconv/circle.hpp"
#include "shiftconv/coefficients.hpp"
#include "shiftconv/common.hpp"
#include "shiftconv/exp_sums.hpp"
#include "shiftconv/shifted_conv.hpp"
#include "shiftconv/voronoi_phi.hpp"

using namespace shiftconv;
using nlohmann::json;

namespace {

struct GlobalConfig {
  int threads = default_threads();
  std::string emit = "table";
  std::string out_dir;
  std::string golden_dir;
};

std::string default_out_dir() {
  const char* env = std::getenv("SHIFTCONV_OUT_DIR");
  return env ? std::string(env) : std::string(".");
}

// ---------------------------------------------------------------------------
// golden files: "key value" lines under <golden-dir>/<name>.txt
// ---------------------------------------------------------------------------

std::map<std::string, double> read_golden(const std::string& path) {
  std::map<std::string, double> out;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("golden file not found: " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string key;
    double val;
    if (ss >> key >> val) out[key] = val;
  }
  return out;
}

void write_golden(const std::string& path, const std::string& header,
                  const std::vector<std::pair<std::string, double>>& vals) {
  std::filesystem::create_directories(std::filesystem::path(path).parent_path());
  std::ofstream out(path);
  out << "# " << header << "\n";
  char buf[128];
  for (const auto& [k, v] : vals) {
    std::snprintf(buf, sizeof buf, "%s %.12g\n", k.c_str(), v);
    out << buf;
  }
}

// compare against golden; regression = measured exceeds stored value
int check_golden(const std::string& path,
                 const std::vector<std::pair<std::string, double>>& vals) {
  auto golden = read_golden(path);
  int bad = 0;
  for (const auto& [k, v] : vals) {
    auto it = golden.find(k);
    if (it == golden.end()) {
      std::printf("golden: key %s missing from %s\n", k.c_str(), path.c_str());
      ++bad;
      continue;
    }
    if (v > it->second + 1e-9) {
      std::printf("REGRESSION %s: measured %.12g exceeds frozen %.12g\n", k.c_str(), v,
                  it->second);
      ++bad;
    } else {
      std::printf("ok %s: %.12g <= frozen %.12g\n", k.c_str(), v, it->second);
    }
  }
  return bad == 0 ? 0 : 1;
}

std::vector<i64> parse_list(const std::string& csv) {
  std::vector<i64> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoll(item));
  }
  return out;
}

CoefficientSequence make_coeff(const std::string& name) {
  if (name == "ones") return CoefficientSequence::ones();
  if (name == "tau") return CoefficientSequence::tau_seq();
  if (name == "tau3") return CoefficientSequence::tau3_seq();
  return ingest_coefficients(name);  // treat as a path
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shiftconv: exponential-sum, character-sum and circle-method toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "configuration file (key = value lines)");

  GlobalConfig cfg;
  cfg.out_dir = default_out_dir();
  cfg.golden_dir = cfg.out_dir + "/golden/v1";
  app.add_option("--threads", cfg.threads, "worker pool size for sweeps");
  app.add_option("--emit", cfg.emit, "output format: table, records, plotdata")
      ->check(CLI::IsMember({"table", "records", "plotdata"}));
  app.add_option("--out-dir", cfg.out_dir, "default output directory");
  app.add_option("--golden-dir", cfg.golden_dir, "versioned golden-file directory");

  int exit_code = 0;

  // ---- gauss ----
  auto* gauss = app.add_subcommand("gauss", "evaluate G(a,b;q) both ways");
  i64 ga = 1, gb = 0, gq = 1;
  gauss->add_option("--a", ga)->required();
  gauss->add_option("--b", gb);
  gauss->add_option("--q", gq)->required();
  gauss->callback([&] {
    cplx d = gauss_sum_direct(ga, gb, gq);
    std::printf("G_direct(%lld,%lld;%lld) = %.12g + %.12gi  |G| = %.12g\n",
                (long long)ga, (long long)gb, (long long)gq, d.real(), d.imag(), std::abs(d));
    if (gcd_i64(ga, gq) == 1) {
      cplx f = gauss_sum_fast(ga, gb, gq);
      double dev = std::abs(d - f) / std::max(1.0, std::abs(d));
      std::printf("G_fast = %.12g + %.12gi  rel_dev = %.3g\n", f.real(), f.imag(), dev);
      if (dev > 1e-9) {
        std::printf("FAIL: fast/direct deviation above 1e-9\n");
        exit_code = 1;
      }
    }
  });

  // ---- kloosterman ----
  auto* kl = app.add_subcommand("kloosterman", "evaluate S(m,n;c)");
  i64 km = 0, kn = 0, kc = 1;
  kl->add_option("--m", km)->required();
  kl->add_option("--n", kn)->required();
  kl->add_option("--c", kc)->required();
  kl->callback([&] {
    cplx s = kloosterman(km, kn, kc);
    i64 g = gcd_i64(gcd_i64(km, kn), kc);
    if (g == 0) g = kc;
    double weil = static_cast<double>(tau(static_cast<u64>(kc))) *
                  std::sqrt(static_cast<double>(g)) * std::sqrt(static_cast<double>(kc));
    std::printf("S(%lld,%lld;%lld) = %.12g  (im %.2e)  weil_bound = %.12g\n", (long long)km,
                (long long)kn, (long long)kc, s.real(), s.imag(), weil);
    if (std::abs(s) > weil + 1e-9) {
      std::printf("FAIL: weil bound violated\n");
      exit_code = 1;
    }
  });

  // ---- salie ----
  auto* sal = app.add_subcommand("salie", "evaluate the twisted sum mod an odd prime");
  i64 sm = 0, sn = 0, sp = 3;
  sal->add_option("--m", sm)->required();
  sal->add_option("--n", sn)->required();
  sal->add_option("--p", sp)->required();
  sal->callback([&] {
    cplx s = salie(sm, sn, sp);
    std::printf("salie(%lld,%lld;%lld) = %.12g + %.12gi  |.| = %.12g  bound = %.12g\n",
                (long long)sm, (long long)sn, (long long)sp, s.real(), s.imag(), std::abs(s),
                2.0 * std::sqrt(static_cast<double>(sp)));
    if (std::abs(s) > 2.0 * std::sqrt(static_cast<double>(sp)) + 1e-9) exit_code = 1;
  });

  // ---- rell ----
  auto* rell = app.add_subcommand("rell", "representation count r_ell(n)");
  i64 rn = 0;
  int rl = 3;
  rell->add_option("--n", rn)->required();
  rell->add_option("--ell", rl);
  rell->callback([&] {
    std::printf("r_%d(%lld) = %lld\n", rl, (long long)rn,
                (long long)sum_of_squares_count(rn, rl));
  });

  // ---- charsum-verify ----
  auto* cv = app.add_subcommand("charsum-verify",
                                "factorization cascade identity over random tuples");
  i64 cv_qmax = 500, cv_count = 200;
  i64 cv_seed = -1;
  cv->add_option("--q-max", cv_qmax)->check(CLI::Range(4, 100000));
  cv->add_option("--count", cv_count);
  cv->add_option("--seed", cv_seed)->required();
  cv->callback([&] {
    Rng rng(static_cast<u64>(cv_seed));
    std::vector<CharSumParams> items;
    while (static_cast<i64>(items.size()) < cv_count) {
      CharSumParams P;
      P.q = rng.uniform(2, cv_qmax);
      if (is_prime(static_cast<u64>(P.q))) continue;  // composite moduli
      auto divs = divisors(static_cast<u64>(P.q));
      P.n1 = static_cast<i64>(divs[static_cast<size_t>(
          rng.uniform(0, static_cast<i64>(divs.size()) - 1))]);
      P.b1 = rng.uniform(0, P.q - 1);
      P.b2 = rng.uniform(0, P.q - 1);
      P.b3 = rng.uniform(0, P.q - 1);
      P.h = rng.uniform(0, 2 * P.q);
      P.v = rng.uniform(-P.q, P.q);
      P.n2 = rng.uniform(-P.q, 2 * P.q);
      items.push_back(P);
    }
    std::vector<double> devs(items.size());
    parallel_for(static_cast<i64>(items.size()), cfg.threads, [&](i64 i) {
      const CharSumParams& P = items[static_cast<size_t>(i)];
      CharSumValue full = twisted_char_sum(P);
      auto sp2 = char_sum_crt_split(P);
      auto ss = char_sum_squarefull_split(P);
      auto fac = char_sum_prime_factors(P);
      std::vector<CharSumValue> parts{sp2.part_q12, ss.part_squarefull};
      for (const auto& f : fac) parts.push_back(f);
      cplx prod = 1;
      for (const auto& pt : parts) prod *= pt.value;
      double ref = full.scale;
      for (size_t a = 0; a < parts.size(); ++a) {
        double other = 1.0;
        for (size_t b = 0; b < parts.size(); ++b)
          if (b != a) other *= std::abs(parts[b].value);
        ref += parts[a].scale * other;
      }
      devs[static_cast<size_t>(i)] = std::abs(prod - full.value) / std::max(1.0, ref);
    });
    double worst = 0;
    size_t worst_i = 0;
    for (size_t i = 0; i < devs.size(); ++i)
      if (devs[i] > worst) {
        worst = devs[i];
        worst_i = i;
      }
    std::printf("charsum-verify: tuples=%lld q_max=%lld seed=%lld max_rel_dev=%.3g\n",
                (long long)cv_count, (long long)cv_qmax, (long long)cv_seed, worst);
    if (worst > 1e-9) {
      const CharSumParams& P = items[worst_i];
      std::printf("FAIL: cascade identity violated at q=%lld n1=%lld b=(%lld,%lld,%lld) "
                  "h=%lld v=%lld n2=%lld (rel dev %.3g > 1e-9)\n",
                  (long long)P.q, (long long)P.n1, (long long)P.b1, (long long)P.b2,
                  (long long)P.b3, (long long)P.h, (long long)P.v, (long long)P.n2, worst);
      exit_code = 1;
    }
  });

  // ---- lemma52-sweep ----
  auto* l52 = app.add_subcommand("lemma52-sweep", "reduced-sum bound regression sweep");
  i64 l52_pmax = 499;
  int l52_samples = 6;
  i64 l52_seed = -1;
  bool l52_check = false;
  std::string l52_records;
  l52->add_option("--p-max", l52_pmax);
  l52->add_option("--samples", l52_samples);
  l52->add_option("--seed", l52_seed)->required();
  l52->add_flag("--check-golden", l52_check);
  l52->add_option("--records", l52_records, "write per-sample records to this file");
  l52->callback([&] {
    std::ofstream rec;
    std::ostream* rp = nullptr;
    if (!l52_records.empty()) {
      rec.open(l52_records);
      rp = &rec;
    }
    ReducedSumSweepReport rep =
        reduced_sum_bound_sweep(l52_pmax, l52_samples, static_cast<u64>(l52_seed),
                                cfg.threads, rp);
    std::vector<std::pair<std::string, double>> vals{
        {"overall_max_ratio", rep.overall.max_ratio},
        {"case_p_div_h_max_ratio", rep.case_p_div_h.max_ratio},
        {"case_salie_max_ratio", rep.case_salie.max_ratio},
        {"case_generic_max_ratio", rep.case_generic.max_ratio},
        {"salie_excess_max", rep.max_salie_excess},
    };
    if (cfg.emit == "records") {
      json j{{"p_max", rep.p_max},
             {"seed", rep.seed},
             {"samples", rep.overall.samples},
             {"overall_max_ratio", rep.overall.max_ratio},
             {"argmax_p", rep.overall.argmax.p},
             {"argmax_h", rep.overall.argmax.h}};
      std::cout << j.dump() << "\n";
    } else {
      std::printf("lemma52-sweep: p_max=%lld samples/case=%d seed=%lld total=%llu\n",
                  (long long)rep.p_max, rep.samples_per_case, (long long)rep.seed,
                  (unsigned long long)rep.overall.samples);
      for (const auto& [k, v] : vals) std::printf("  %s = %.12g\n", k.c_str(), v);
      std::printf("  argmax: p=%lld h=%lld w=%lld r2=%lld r3n2=%lld\n",
                  (long long)rep.overall.argmax.p, (long long)rep.overall.argmax.h,
                  (long long)rep.overall.argmax.w, (long long)rep.overall.argmax.r2,
                  (long long)rep.overall.argmax.r3n2);
    }
    if (rep.case_p_div_h.max_ratio > 2.0 + 1e-9 || rep.max_salie_excess > 1e-9) {
      std::printf("FAIL: closed-form case bound violated\n");
      exit_code = 1;
      return;
    }
    std::string path = cfg.golden_dir + "/lemma52.txt";
    if (l52_check)
      exit_code = check_golden(path, vals);
    else
      write_golden(path, "lemma52-sweep frozen constants (p-max, samples, seed pinned)", vals);
  });

  // ---- prop33-sweep ----
  auto* p33 = app.add_subcommand("prop33-sweep", "full character-sum bound regression sweep");
  i64 p33_qmax = 1000;
  int p33_samples = 150;
  i64 p33_seed = -1;
  bool p33_check = false;
  std::string p33_records;
  p33->add_option("--q-max", p33_qmax);
  p33->add_option("--samples", p33_samples);
  p33->add_option("--seed", p33_seed)->required();
  p33->add_flag("--check-golden", p33_check);
  p33->add_option("--records", p33_records);
  p33->callback([&] {
    std::ofstream rec;
    std::ostream* rp = nullptr;
    if (!p33_records.empty()) {
      rec.open(p33_records);
      rp = &rec;
    }
    CharSumSweepReport rep = char_sum_bound_sweep(p33_qmax, p33_samples,
                                                  static_cast<u64>(p33_seed), cfg.threads, rp);
    std::vector<std::pair<std::string, double>> vals{
        {"overall_max_ratio", rep.overall.max_ratio}};
    if (cfg.emit == "records") {
      json j{{"q_max", rep.q_max},
             {"seed", rep.seed},
             {"samples", rep.overall.samples},
             {"overall_max_ratio", rep.overall.max_ratio},
             {"argmax_q", rep.overall.argmax.q},
             {"argmax_n1", rep.overall.argmax.n1}};
      std::cout << j.dump() << "\n";
    } else {
      std::printf("prop33-sweep: q_max=%lld samples=%d seed=%lld\n", (long long)rep.q_max,
                  rep.samples, (long long)rep.seed);
      std::printf("  overall_max_ratio = %.12g\n", rep.overall.max_ratio);
      std::printf("  argmax: q=%lld n1=%lld h=%lld\n", (long long)rep.overall.argmax.q,
                  (long long)rep.overall.argmax.n1, (long long)rep.overall.argmax.h);
    }
    std::string path = cfg.golden_dir + "/prop33.txt";
    if (p33_check)
      exit_code = check_golden(path, vals);
    else
      write_golden(path, "prop33-sweep frozen constants (q-max, samples, seed pinned)", vals);
  });

  // ---- farey ----
  auto* far = app.add_subcommand("farey", "exact Farey dissection verification");
  i64 far_qmax = 100;
  far->add_option("--q-max", far_qmax);
  far->callback([&] {
    auto arcs = farey_dissection(far_qmax);
    bool ok = true;
    for (size_t i = 0; i + 1 < arcs.size(); ++i)
      if (!(arcs[i].right == arcs[i + 1].left)) ok = false;
    Rat total = arcs.back().right - arcs.front().left;
    ok = ok && (total == Rat(1, 1));
    for (const auto& arc : arcs) {
      if (((arc.a * arc.q_left) % arc.q + arc.q) % arc.q != 1 % arc.q) ok = false;
      if (((arc.a * arc.q_right) % arc.q + arc.q) % arc.q != ((arc.q - 1) % arc.q + arc.q) % arc.q)
        ok = false;
    }
    if (cfg.emit == "plotdata") {
      std::printf("# farey arcs of order %lld: a q q_left q_right center\n", (long long)far_qmax);
      for (const auto& arc : arcs)
        std::printf("%lld\t%lld\t%lld\t%lld\t%.12g\n", (long long)arc.a, (long long)arc.q,
                    (long long)arc.q_left, (long long)arc.q_right, arc.center.to_double());
    }
    std::printf("farey: Q=%lld arcs=%zu tiling=%s congruences=%s measure=%s\n",
                (long long)far_qmax, arcs.size(), ok ? "exact" : "BROKEN",
                ok ? "ok" : "BROKEN", to_string(total).c_str());
    if (!ok) exit_code = 1;
  });

  // ---- circle-identity ----
  auto* ci = app.add_subcommand("circle-identity",
                                "sampled circle integral against the direct sum");
  ci->set_help_flag("--help", "print help");
  i64 ci_X = 1024, ci_h = 0, ci_N = 0;
  std::string ci_coeff = "tau3";
  ci->add_option("--X", ci_X)->required();
  ci->add_option("--h", ci_h);
  ci->add_option("--coeff", ci_coeff);
  ci->add_option("--N", ci_N, "sample count (default 4X+2)");
  ci->callback([&] {
    TestFunction phi = TestFunction::canonical_bump();
    CoefficientSequence A = make_coeff(ci_coeff);
    double direct = shifted_convolution_direct(ci_X, ci_h, A, phi);
    cplx circ = circle_integral(ci_X, ci_h, A, phi, ci_N);
    double rel = std::abs(circ.real() - direct) / std::max(std::abs(direct), 1.0);
    std::printf("circle-identity: X=%lld h=%lld coeff=%s\n", (long long)ci_X, (long long)ci_h,
                ci_coeff.c_str());
    std::printf("  direct  = %.12g\n  sampled = %.12g (im %.2e)\n  rel_diff = %.3g\n", direct,
                circ.real(), circ.imag(), rel);
    if (rel > 1e-6) {
      std::printf("FAIL: identity deviation above 1e-6\n");
      exit_code = 1;
    }
  });

  // ---- phi-eval ----
  auto* pe = app.add_subcommand("phi-eval", "contour evaluation of the dual weight");
  double pe_x = 100.0, pe_sigma = 1.25, pe_X = 1.0;
  int pe_k = 0;
  pe->add_option("--x", pe_x)->required();
  pe->add_option("--k", pe_k);
  pe->add_option("--sigma", pe_sigma);
  pe->add_option("--X", pe_X, "window scale: support [X/2, X]");
  pe->callback([&] {
    TestFunction phi = TestFunction::canonical_bump();
    Window w = scaled_window(phi, pe_X);
    ContourDiagnostics diag;
    cplx v = voronoi_weight_contour(pe_x, pe_k, SpectralParams::zero(), pe_sigma, w, {}, &diag);
    std::printf("phi_%d(%.6g) = %.12g + %.12gi   (t_used=%.0f nodes=%lld)\n", pe_k, pe_x,
                v.real(), v.imag(), diag.t_used, (long long)diag.nodes);
  });

  // ---- phi-consistency ----
  auto* pc = app.add_subcommand("phi-consistency",
                                "sigma invariance and contour/asymptotic agreement");
  int pc_points = 6;
  pc->add_option("--points", pc_points);
  pc->callback([&] {
    TestFunction phi = TestFunction::canonical_bump();
    Window w = scaled_window(phi, 1.0);
    SpectralParams mu = SpectralParams::zero();
    auto contour = [&](double x, int k) {
      return voronoi_weight_contour(x, k, mu, 1.25, w);
    };
    std::vector<double> cal;
    for (int i = 0; i < 8; ++i) cal.push_back(1.0e3 * std::pow(100.0, i / 7.0));
    AsymptoticConstants C = calibrate_asymptotic(contour, w, cal, 3, true);
    double worst_sigma = 0, worst_cross = 0;
    for (int i = 0; i < pc_points; ++i) {
      double x = 300.0 * std::pow(30.0, static_cast<double>(i) / std::max(1, pc_points - 1));
      for (int k = 0; k < 2; ++k) {
        cplx a = voronoi_weight_contour(x, k, mu, 0.3, w);
        cplx b = voronoi_weight_contour(x, k, mu, 0.9, w);
        worst_sigma = std::max(worst_sigma, std::abs(a - b) / std::abs(a));
      }
    }
    double scale = 0;
    std::vector<std::pair<double, std::array<cplx, 4>>> rows;
    for (int i = 0; i < pc_points; ++i) {
      double x = 1.0e3 * std::pow(100.0, static_cast<double>(i) / std::max(1, pc_points - 1));
      std::array<cplx, 4> row;
      for (int k = 0; k < 2; ++k) {
        row[static_cast<size_t>(2 * k)] = contour(x, k);
        row[static_cast<size_t>(2 * k + 1)] = voronoi_weight_asymptotic(x, k, 3, w, C);
        scale = std::max(scale, std::abs(row[static_cast<size_t>(2 * k)]));
      }
      rows.push_back({x, row});
    }
    for (const auto& [x, row] : rows) {
      for (int k = 0; k < 2; ++k) {
        double dev = std::abs(row[static_cast<size_t>(2 * k)] - row[static_cast<size_t>(2 * k + 1)]);
        double tol = std::max(1e-3 * std::abs(row[static_cast<size_t>(2 * k)]), 1e-6 * scale);
        if (dev > tol) worst_cross = std::max(worst_cross, dev / tol);
        if (cfg.emit == "plotdata")
          std::printf("%.6g\t%d\t%.12g\t%.12g\n", x, k,
                      std::abs(row[static_cast<size_t>(2 * k)]),
                      std::abs(row[static_cast<size_t>(2 * k + 1)]));
      }
    }
    std::printf("phi-consistency: sigma_invariance_max=%.3g cross_eval_worst_tol_frac=%.3g\n",
                worst_sigma, worst_cross);
    if (worst_sigma > 1e-6 || worst_cross > 1.0) {
      std::printf("FAIL: consistency tolerances exceeded\n");
      exit_code = 1;
    }
  });

  // ---- mainterm ----
  auto* mt = app.add_subcommand("mainterm", "triple-divisor main-term comparison");
  mt->set_help_flag("--help", "print help");
  i64 mt_h = 1, mt_qtrunc = 10000;
  std::string mt_xlist = "1024,4096,16384,65536";
  mt->add_option("--h", mt_h);
  mt->add_option("--q-trunc", mt_qtrunc);
  mt->add_option("--X-list", mt_xlist);
  mt->callback([&] {
    TestFunction phi = TestFunction::canonical_bump();
    auto reps = main_term_comparison(parse_list(mt_xlist), mt_h, phi, mt_qtrunc);
    std::vector<std::pair<double, double>> trend;
    if (cfg.emit == "plotdata")
      std::printf("# mainterm h=%lld q_trunc=%lld: X direct main_term relative_error\n",
                  (long long)mt_h, (long long)mt_qtrunc);
    for (const auto& r : reps) {
      trend.push_back({static_cast<double>(r.X), r.relative_error});
      if (cfg.emit == "plotdata") {
        std::printf("%lld\t%.12g\t%.12g\t%.12g\n", (long long)r.X, r.direct, r.main_term,
                    r.relative_error);
      } else if (cfg.emit == "records") {
        json j{{"X", r.X},        {"h", r.h},
               {"direct", r.direct}, {"main_term", r.main_term},
               {"relative_error", r.relative_error}};
        std::cout << j.dump() << "\n";
      } else {
        std::printf("X=%7lld direct=%.10e main=%.10e rel_err=%.6f\n", (long long)r.X, r.direct,
                    r.main_term, r.relative_error);
      }
    }
    if (!reps.empty()) {
      TrendFit fit = fit_loglog(trend);
      std::printf("mainterm: h=%lld q_trunc=%lld points=%zu rel_err_slope=%.4f\n",
                  (long long)mt_h, (long long)mt_qtrunc, reps.size(), fit.slope);
      const auto& c = reps.front().constants;
      std::printf("  constants: C0=%.8f C1=%.8f C2=%.8f (tails %.2g %.2g %.2g)\n", c[0].value,
                  c[1].value, c[2].value, c[0].tail_estimate, c[1].tail_estimate,
                  c[2].tail_estimate);
      std::printf("  even-q |term| shares: %.4f %.4f %.4f\n", c[0].even_q_share,
                  c[1].even_q_share, c[2].even_q_share);
    }
  });

  // ---- sphere-check ----
  auto* sc = app.add_subcommand("sphere-check", "lattice count against the smooth term");
  i64 sc_X = 1'000'000;
  sc->add_option("--X", sc_X);
  sc->callback([&] {
    SphereCountResult r = sphere_count_check(sc_X);
    std::printf("sphere-check: X=%lld count=%lld smooth=%.6f error_exponent=%.4f\n",
                (long long)r.X, (long long)r.lattice_count, r.smooth_term, r.error_exponent);
    if (r.error_exponent > 0.70) {
      std::printf("FAIL: error exponent above 0.70\n");
      exit_code = 1;
    }
  });

  // ---- trend ----
  auto* tr = app.add_subcommand("trend", "growth-exponent fit of the shifted sum");
  tr->set_help_flag("--help", "print help");
  std::string tr_coeff = "tau3", tr_xlist = "1024,2048,4096,8192,16384,32768";
  i64 tr_h = 0;
  tr->add_option("--coeff", tr_coeff);
  tr->add_option("--h", tr_h);
  tr->add_option("--X-list", tr_xlist);
  tr->callback([&] {
    TestFunction phi = TestFunction::canonical_bump();
    CoefficientSequence A = make_coeff(tr_coeff);
    TrendFit fit = growth_exponent_fit(parse_list(tr_xlist), tr_h, A, phi);
    if (fit.degenerate) {
      std::printf("trend: degenerate fit (all-zero sums or too few points)\n");
      exit_code = 1;
      return;
    }
    std::printf("trend: coeff=%s h=%lld slope=%.4f intercept=%.4f rms=%.4f points=%zu\n",
                tr_coeff.c_str(), (long long)tr_h, fit.slope, fit.intercept, fit.residual_rms,
                fit.points);
  });

  // ---- ingest-validate ----
  auto* iv = app.add_subcommand("ingest-validate", "validate a coefficient file");
  std::string iv_file;
  iv->add_option("--file", iv_file)->required();
  iv->callback([&] {
    std::ifstream probe(iv_file);
    if (!probe) {
      std::printf("FAIL: cannot open %s\n", iv_file.c_str());
      exit_code = 1;
      return;
    }
    std::string header;
    std::getline(probe, header);
    probe.close();
    try {
      if (header.rfind("# mu1_re=", 0) == 0) {
        GL3Coefficients c = load_gl3_coefficients(iv_file);
        std::printf("ingest-validate: gl3 file, %zu records, mu1=(%.6g,%.6g) mu2=(%.6g,%.6g)\n",
                    c.values.size(), c.mu1.real(), c.mu1.imag(), c.mu2.real(), c.mu2.imag());
      } else {
        CoefficientSequence s = ingest_coefficients(iv_file);
        auto [lo, hi] = s.range();
        std::printf("ingest-validate: sequence file, range [%lld, %lld]\n", (long long)lo,
                    (long long)hi);
      }
    } catch (const std::exception& e) {
      std::printf("FAIL: %s\n", e.what());
      exit_code = 1;
    }
  });

  for (CLI::App* sub : {gauss, kl, sal, rell, cv, l52, p33, far, ci, pe, pc, mt, sc, tr, iv})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors exit 2
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return exit_code;
}
