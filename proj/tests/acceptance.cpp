// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Sizes, tolerances and seeds are pinned here. Run with --only <num> to
// run a single criterion, --threads N to bound worker threads.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "triflip/chain.hpp"
#include "triflip/counting.hpp"
#include "triflip/cycles.hpp"
#include "triflip/exact_graph.hpp"
#include "triflip/exploration.hpp"
#include "triflip/generate.hpp"
#include "triflip/map.hpp"
#include "triflip/sampling.hpp"
#include "triflip/stats.hpp"

using namespace triflip;

namespace {

int g_threads = 0;

int workers() {
  if (g_threads > 0) return g_threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename F>
void parallel_for(std::int64_t count, const F& f) {
  const int nth = static_cast<int>(std::min<std::int64_t>(workers(), count));
  if (nth <= 1) {
    for (std::int64_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < nth; ++w)
    pool.emplace_back([&, w]() {
      for (std::int64_t i = w; i < count; i += nth) f(i);
    });
  for (auto& th : pool) th.join();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// 1. enumeration exactness
Outcome criterion_enumeration() {
  std::ostringstream d;
  bool ok = true;
  const std::vector<std::int64_t> expect{4, 32, 336};
  for (std::int64_t n = 3; n <= 5; ++n) {
    std::int64_t cnt = 0;
    generate_all_sphere(n, [&](const Triangulation&) { ++cnt; });
    const BigInt formula = count_sphere(n);
    ok = ok && BigInt(cnt) == formula && formula == expect[n - 3];
    d << "sphere n=" << n << ": " << cnt << "/" << formula << " ";
  }
  std::int64_t pairs = 0, mismatches = 0;
  for (std::int64_t n = 0; n + 1 <= 8; ++n) {
    for (std::int64_t p = 1; n + p <= 8; ++p) {
      std::int64_t cnt = 0;
      generate_all(n, p, [&](const Triangulation&) { ++cnt; });
      ++pairs;
      if (BigInt(cnt) != count_boundary(n, p)) {
        ++mismatches;
        ok = false;
      }
    }
  }
  d << "| boundary pairs n+p<=8: " << pairs << ", mismatches: " << mismatches;
  return {ok, d.str()};
}

// 2. chain correctness at n=4, exact
Outcome criterion_chain_exact() {
  const auto g = build_flip_graph(4);
  const auto r = stationarity_report(g);
  std::ostringstream d;
  d << "states=" << g.size() << " symmetric=" << r.symmetric
    << " doubly_stochastic=" << r.doubly_stochastic << " uniform=" << r.uniform_stationary
    << " irreducible=" << r.irreducible << " aperiodic=" << r.aperiodic;
  return {g.size() == 32 && r.all(), d.str()};
}

// 3. sampler uniformity chi-squares
Outcome criterion_sampler_uniformity() {
  std::ostringstream d;
  bool ok = true;
  {
    const auto classes = generate_codes_sphere(4);
    std::map<Code, std::int64_t> hits;
    Rng rng(946301);
    for (int i = 0; i < 100000; ++i) hits[canonical_code(sample_sphere(4, rng))] += 1;
    std::vector<std::int64_t> obs;
    for (const auto& c : classes) obs.push_back(hits[c]);
    const auto r = chi2_uniform_test(obs, 1e-3);
    ok = ok && r.pass && classes.size() == 32;
    d << "sphere(4): chi2=" << r.statistic << " thr=" << r.threshold << " ";
  }
  {
    const auto classes = generate_codes(2, 1);
    std::map<Code, std::int64_t> hits;
    Rng rng(946302);
    for (int i = 0; i < 100000; ++i) hits[canonical_code(sample_boundary(2, 1, rng))] += 1;
    std::vector<std::int64_t> obs;
    for (const auto& c : classes) obs.push_back(hits[c]);
    const auto r = chi2_uniform_test(obs, 1e-3);
    ok = ok && r.pass && classes.size() == 4;
    d << "| boundary(2,1): chi2=" << r.statistic << " thr=" << r.threshold;
  }
  return {ok, d.str()};
}

// 4. Lemma 8 conditional uniformity at n=10, k=50
Outcome criterion_unknown_uniform() {
  const std::int64_t n = 10, steps = 50;
  const std::int64_t reps = 10000;
  struct CellData {
    std::map<Code, std::int64_t> hits;
    std::int64_t total = 0;
  };
  std::map<std::pair<std::int64_t, std::int64_t>, CellData> cells;
  std::mutex mu;
  parallel_for(reps, [&](std::int64_t i) {
    Rng rng(replica_seed(40100, static_cast<std::uint64_t>(i)));
    FrontierTracker tr(glued_initial(n, rng));
    Rng srng(replica_seed(40200, static_cast<std::uint64_t>(i)));
    for (std::int64_t k = 0; k < steps; ++k) tr.step(srng);
    const std::pair<std::int64_t, std::int64_t> key{tr.Ptilde(), tr.Vtilde()};
    Code code;  // empty code marks the exhausted cell
    if (!tr.unknown_empty()) code = canonical_code(tr.extract_unknown());
    std::lock_guard<std::mutex> lock(mu);
    auto& cell = cells[key];
    cell.hits[code] += 1;
    cell.total += 1;
  });
  std::ostringstream d;
  bool ok = true;
  std::int64_t tested = 0, trivial = 0;
  for (const auto& [key, cell] : cells) {
    if (cell.total < 500) continue;
    const auto [ptilde, vtilde] = key;
    if (ptilde == 0) {
      ++trivial;  // T2 empty: single class
      continue;
    }
    const std::int64_t m = (n + 1) / 2 + 1 - vtilde;
    const auto classes = generate_codes(m, ptilde);
    if (classes.empty()) {
      ok = false;
      d << "[cell (" << ptilde << "," << vtilde << "): empty class!] ";
      continue;
    }
    if (classes.size() == 1) {
      ++trivial;
      continue;
    }
    // observations per class; bin round-robin so expected counts are >= ~8
    std::map<Code, std::int64_t> class_index;
    for (std::size_t ci = 0; ci < classes.size(); ++ci) class_index[classes[ci]] = ci;
    const std::int64_t nbins = std::max<std::int64_t>(
        2, std::min<std::int64_t>(static_cast<std::int64_t>(classes.size()), cell.total / 8));
    std::vector<std::int64_t> obs(nbins, 0);
    std::vector<double> probs(nbins, 0.0);
    for (std::size_t ci = 0; ci < classes.size(); ++ci)
      probs[ci % nbins] += 1.0 / static_cast<double>(classes.size());
    bool alien = false;
    for (const auto& [code, cnt] : cell.hits) {
      const auto it = class_index.find(code);
      if (it == class_index.end()) {
        alien = true;
        break;
      }
      obs[it->second % nbins] += cnt;
    }
    if (alien) {
      ok = false;
      d << "[cell (" << ptilde << "," << vtilde << "): code outside class!] ";
      continue;
    }
    const auto r = chi2_test(obs, probs, 1e-3);
    if (!r.pass) ok = false;
    d << "cell(" << ptilde << "," << vtilde << "):N=" << cell.total << " chi2=" << r.statistic
      << "/thr" << r.threshold << (r.pass ? " ok " : " FAIL ");
    ++tested;
  }
  d << "| cells tested=" << tested << " single-class cells=" << trivial;
  return {ok && (tested + trivial) >= 1, d.str()};
}

// 5. waiting-time law at n=50
Outcome criterion_waiting_times() {
  const std::int64_t n = 50;
  const std::int64_t denom = 3 * n - 6;
  const std::int64_t reps = 10000;
  const int gaps_per_rep = 8;
  std::map<std::int64_t, std::vector<std::int64_t>> by_p;  // prevailing Ptilde -> gaps
  std::mutex mu;
  parallel_for(reps, [&](std::int64_t i) {
    Rng rng(replica_seed(50100, static_cast<std::uint64_t>(i)));
    FrontierTracker tr(glued_initial(n, rng));
    Rng srng(replica_seed(50200, static_cast<std::uint64_t>(i)));
    std::vector<std::pair<std::int64_t, std::int64_t>> local;  // (prevailing P, gap)
    std::int64_t prev_tau = -1;                                // waits measured from step 0
    std::int64_t prevailing = tr.Ptilde();
    std::int64_t safety = 200000;
    while (static_cast<int>(local.size()) < gaps_per_rep && !tr.unknown_empty() && safety-- > 0) {
      const auto before = tr.taus().size();
      tr.step(srng);
      if (tr.taus().size() > before) {
        const std::int64_t tau = tr.taus().back();
        local.push_back({prevailing, tau - prev_tau});
        prev_tau = tau;
        prevailing = tr.Ptilde();
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    for (const auto& [p, gap] : local) by_p[p].push_back(gap);
  });
  std::ostringstream d;
  bool ok = true;
  std::int64_t tested = 0;
  for (const auto& [p, gaps] : by_p) {
    if (gaps.size() < 500) continue;
    const double q = static_cast<double>(p) / static_cast<double>(denom);
    const auto cdf = [q](std::int64_t k) {
      return k < 1 ? 0.0 : 1.0 - std::pow(1.0 - q, static_cast<double>(k));
    };
    const auto r = ks_test_discrete(gaps, cdf, 1e-3);
    if (!r.pass) ok = false;
    d << "P=" << p << ":N=" << gaps.size() << " D=" << r.statistic << "/thr" << r.threshold
      << (r.pass ? " ok " : " FAIL ");
    ++tested;
  }
  d << "| groups tested=" << tested;
  return {ok && tested >= 1, d.str()};
}

// 6. lower-bound signal at n=1e4
Outcome criterion_lowerbound_signal() {
  const std::int64_t n = 10000, k_n = 10000, ell = 10;
  const std::int64_t min_side = (n + 3) / 4;
  const std::int64_t reps = 50;
  std::vector<char> chain_found(reps, 0), control_found(reps, 0);
  parallel_for(reps, [&](std::int64_t i) {
    {
      Rng rng(replica_seed(60100, static_cast<std::uint64_t>(i)));
      FrontierTracker tr(glued_initial(n, rng));
      for (std::int64_t k = 0; k < k_n; ++k) tr.step(rng);
      chain_found[i] = find_separating_cycle(tr.map(), ell, min_side, 1).has_value();
    }
    {
      Rng rng(replica_seed(60200, static_cast<std::uint64_t>(i)));
      const auto t = sample_sphere(n, rng);
      control_found[i] = find_separating_cycle(t, ell, min_side, 1).has_value();
    }
  });
  std::int64_t ch = 0, cu = 0;
  for (std::int64_t i = 0; i < reps; ++i) {
    ch += chain_found[i];
    cu += control_found[i];
  }
  const double fc = static_cast<double>(ch) / reps;
  const double fu = static_cast<double>(cu) / reps;
  std::ostringstream d;
  d << "chain=" << fc << " control=" << fu << " tv_lb=" << (fc - fu);
  return {fc >= 0.8 && fu <= 0.1 && fc - fu >= 0.6, d.str()};
}

// 7. peeling scaling at n=1e5: least-squares slope of log max-perimeter
// vs log j over the 20 runs' pooled trajectories
Outcome criterion_peeling_scaling() {
  const std::int64_t n = 100000;
  const std::int64_t jmax = static_cast<std::int64_t>(std::floor(std::pow(n, 0.75)));
  const std::int64_t runs = 20;
  std::vector<double> slopes(runs, 0.0);
  std::vector<std::vector<double>> xs(runs), ys(runs);
  parallel_for(runs, [&](std::int64_t i) {
    Rng rng(replica_seed(70100, static_cast<std::uint64_t>(i)));
    const auto host = sample_boundary(n - 1, 1, rng);
    PeelExploration e(host);
    std::int64_t maxP = 0;
    std::int64_t next_grid = 16;
    for (std::int64_t j = 1; j <= jmax && !e.done(); ++j) {
      e.step(e.layers_pick());
      maxP = std::max(maxP, e.perimeter());
      if (j == next_grid) {
        xs[i].push_back(std::log(static_cast<double>(j)));
        ys[i].push_back(std::log(static_cast<double>(std::max<std::int64_t>(1, maxP))));
        next_grid = std::max(next_grid + 1, static_cast<std::int64_t>(next_grid * 1.25));
      }
    }
    slopes[i] = fit_line(xs[i], ys[i]).slope;
  });
  std::vector<double> lx, ly;
  for (std::int64_t i = 0; i < runs; ++i) {
    lx.insert(lx.end(), xs[i].begin(), xs[i].end());
    ly.insert(ly.end(), ys[i].begin(), ys[i].end());
  }
  const auto pooled = fit_line(lx, ly);
  std::ostringstream d;
  double lo = 1e9, hi = -1e9;
  for (auto s : slopes) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  const bool ok = pooled.slope >= 0.55 && pooled.slope <= 0.80;
  d << "pooled slope=" << pooled.slope << " (se " << pooled.slope_stderr
    << ") target [0.55,0.80]; per-run slopes in [" << lo << ", " << hi << "]";
  return {ok, d.str()};
}

// 8. connectivity + normalization
Outcome criterion_appendix() {
  std::ostringstream d;
  bool ok = true;
  for (std::int64_t n : {3, 4, 5}) {
    const auto g = build_flip_graph(n);
    const auto c = connectivity_and_diameter(g);
    ok = ok && c.connected;
    d << "n=" << n << ": connected=" << c.connected << " diam=" << c.diameter << " ";
  }
  const std::int64_t samples = 1000;
  std::vector<char> fails(samples, 0);
  parallel_for(samples, [&](std::int64_t i) {
    Rng rng(replica_seed(80100, static_cast<std::uint64_t>(i)));
    const std::int64_t n = 10 + static_cast<std::int64_t>(rng.below(991));  // up to 1000
    const auto t = sample_sphere(n, rng);
    try {
      const auto res = normalize_to_type3(t);
      const auto [loops, excess] = type_defects(res.final_map);
      bool good = loops == 0 && excess == 0 && validate(res.final_map).ok &&
                  static_cast<std::int64_t>(res.flips.size()) <= 3 * n;
      // intermediate maps valid
      Triangulation cur = t;
      for (const auto e : res.flips) {
        flip_in_place(cur, e);
        if (!validate(cur).ok) good = false;
      }
      if (!good) fails[i] = 1;
    } catch (const std::exception&) {
      fails[i] = 1;
    }
  });
  std::int64_t bad = 0;
  for (auto f : fails) bad += f;
  ok = ok && bad == 0;
  d << "| normalization fails: " << bad << "/" << samples;
  return {ok, d.str()};
}

// 9. asymptotics
Outcome criterion_asymptotics() {
  std::ostringstream d;
  bool ok = true;
  for (std::int64_t p = 1; p <= 3; ++p) {
    const double r = asymptotic_ratio(200, p);
    ok = ok && std::abs(r - 1.0) < 0.05;
    d << "ratio(200," << p << ")=" << r << " ";
  }
  return {ok, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
    if (a == "--threads" && i + 1 < argc) g_threads = std::atoi(argv[++i]);
  }
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"enumeration exactness", criterion_enumeration},
      {"chain exactness at n=4", criterion_chain_exact},
      {"sampler uniformity", criterion_sampler_uniformity},
      {"unknown-side conditional uniformity", criterion_unknown_uniform},
      {"waiting-time law", criterion_waiting_times},
      {"lower-bound signal", criterion_lowerbound_signal},
      {"peeling scaling", criterion_peeling_scaling},
      {"connectivity and normalization", criterion_appendix},
      {"asymptotic enumeration", criterion_asymptotics},
  };
  bool all_pass = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only > 0 && static_cast<int>(i + 1) != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const auto secs =
        std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - t0)
            .count();
    std::cout << "[" << (i + 1) << "] " << criteria[i].first << ": "
              << (out.pass ? "PASS" : "FAIL") << " (" << secs << "s) " << out.detail << "\n"
              << std::flush;
    all_pass = all_pass && out.pass;
  }
  return all_pass ? 0 : 1;
}
