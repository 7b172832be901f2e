// Command-line harness for the flip-chain experiments. Exit codes:
// 0 success, 2 invalid input, 3 internal invariant violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "expr.hpp"
#include "triflip/chain.hpp"
#include "triflip/counting.hpp"
#include "triflip/cycles.hpp"
#include "triflip/exact_graph.hpp"
#include "triflip/exploration.hpp"
#include "triflip/generate.hpp"
#include "triflip/map.hpp"
#include "triflip/sampling.hpp"
#include "triflip/stats.hpp"

using nlohmann::json;
using namespace triflip;
using triflip_cli::eval_schedule;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << v;
  return os.str();
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  return f;
}

void write_text(const std::string& path, const std::string& text) {
  auto f = open_out(path);
  f << text;
}

struct CommonOpts {
  std::uint64_t seed = 1;
  std::int64_t replicas = 1;
  std::string out;
  int threads = 0;
};

int n_workers(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Deterministic parallel map over replica indices.
template <typename F>
void parallel_replicas(std::int64_t count, int threads, const F& f) {
  const int nth = std::min<std::int64_t>(n_workers(threads), count);
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

int cmd_count(std::int64_t n, std::int64_t p, bool have_p) {
  if (have_p)
    std::cout << count_boundary(n, p) << "\n";
  else
    std::cout << count_sphere(n) << "\n";
  return 0;
}

int cmd_gen(std::int64_t n, std::int64_t p, bool have_p, const std::string& out,
            std::int64_t bound) {
  std::ostringstream body;
  std::int64_t cnt = 0;
  const auto emit = [&](const Triangulation& t) {
    ++cnt;
    const auto code = canonical_code(t);
    for (std::size_t i = 0; i < code.size(); ++i) body << (i ? " " : "") << code[i];
    body << "\n";
  };
  if (have_p)
    generate_all(n, p, emit, bound > 0 ? bound : kDefaultBoundaryBound);
  else
    generate_all_sphere(n, emit, bound > 0 ? bound : kDefaultSphereBound);
  std::cout << cnt << "\n";
  if (!out.empty()) {
    std::ostringstream head;
    head << "# triflip gen n=" << n;
    if (have_p) head << " p=" << p;
    head << " config_hash=" << hex64(fnv1a(out + std::to_string(n) + ":" + std::to_string(p)))
         << "\n";
    write_text(out, head.str() + body.str());
  }
  return 0;
}

int cmd_sample(std::int64_t n, std::int64_t p, bool have_p, const CommonOpts& c) {
  Rng rng(c.seed);
  const Triangulation t = have_p ? sample_boundary(n, p, rng) : sample_sphere(n, rng);
  const std::string text = write_map(t);
  if (c.out.empty())
    std::cout << text;
  else
    write_text(c.out, text);
  return 0;
}

int cmd_chain(std::int64_t n, std::int64_t steps, std::int64_t record_stride,
              const std::string& start, const CommonOpts& c) {
  Triangulation t0;
  if (!start.empty()) {
    std::ifstream f(start);
    if (!f) throw std::invalid_argument("cannot open start map: " + start);
    std::stringstream ss;
    ss << f.rdbuf();
    t0 = read_map(ss.str());
  } else {
    Rng rng(splitmix64(c.seed ^ 0x5eedba5eull));
    t0 = sample_sphere(n, rng);
  }
  const auto results = run_replicas(t0, steps, c.seed, c.replicas,
                                    record_stride > 0 ? record_stride : 1, c.threads);
  std::ostringstream body;
  body << "replica,k,edge_id,identity_flag\n";
  for (std::int64_t i = 0; i < c.replicas; ++i)
    for (const auto& r : results[i].records)
      body << i << "," << r.k << "," << r.edge_rep << "," << (r.identity ? 1 : 0) << "\n";
  std::ostringstream head;
  head << "# triflip chain n=" << n << " steps=" << steps << " seed=" << c.seed
       << " config_hash=" << hex64(fnv1a(body.str())) << "\n";
  if (c.out.empty())
    std::cout << head.str() << body.str();
  else
    write_text(c.out, head.str() + body.str());
  for (std::int64_t i = 0; i < c.replicas; ++i)
    std::cerr << "replica " << i << ": identity steps " << results[i].identity_steps << "/"
              << steps << "\n";
  return 0;
}

int cmd_frontier(std::int64_t n, std::int64_t steps, const CommonOpts& c) {
  struct Rows {
    std::string steps_rows, tau_rows;
  };
  std::vector<Rows> rows(c.replicas);
  parallel_replicas(c.replicas, c.threads, [&](std::int64_t i) {
    Rng rng(replica_seed(c.seed, static_cast<std::uint64_t>(i)));
    FrontierTracker tr(glued_initial(n, rng));
    std::ostringstream srow, trow;
    for (std::int64_t k = 0; k < steps; ++k) {
      const auto rec = tr.step(rng);
      srow << i << "," << rec.k << "," << rec.Ptilde << "," << rec.Vtilde << "," << rec.event
           << "\n";
    }
    trow << i << ",0,0,,\n";  // tau_0 = 0 by definition
    for (const auto& tr_rec : tr.tau_records())
      trow << i << "," << tr_rec.j << "," << tr_rec.tau << "," << tr_rec.P << "," << tr_rec.V
           << "\n";
    rows[i] = {srow.str(), trow.str()};
  });
  std::ostringstream sbody, tbody;
  sbody << "replica,k,Ptilde,Vtilde,event\n";
  tbody << "replica,j,tau_j,P_j,V_j\n";
  for (const auto& r : rows) {
    sbody << r.steps_rows;
    tbody << r.tau_rows;
  }
  const std::string prefix = c.out.empty() ? std::string("frontier") : c.out;
  std::ostringstream head;
  head << "# triflip frontier n=" << n << " steps=" << steps << " seed=" << c.seed
       << " config_hash=" << hex64(fnv1a(sbody.str())) << "\n";
  write_text(prefix + "_steps.csv", head.str() + sbody.str());
  write_text(prefix + "_tau.csv", head.str() + tbody.str());
  std::cout << "wrote " << prefix << "_steps.csv and " << prefix << "_tau.csv\n";
  return 0;
}

json witness_json(const std::optional<CycleWitness>& w) {
  if (!w) return nullptr;
  json j;
  j["length"] = w->length();
  j["side_a"] = w->side_left;
  j["side_b"] = w->side_right;
  j["darts"] = w->darts;
  return j;
}

int cmd_cycles(const std::string& in, std::int64_t len_max, std::int64_t min_side, bool shield,
               std::int64_t vol_max, const CommonOpts& c) {
  std::ifstream f(in);
  if (!f) throw std::invalid_argument("cannot open map: " + in);
  std::stringstream ss;
  ss << f.rdbuf();
  const Triangulation t = read_map(ss.str());
  std::optional<CycleWitness> w;
  if (shield)
    w = boundary_shield_cycle(t, len_max, vol_max, c.threads);
  else
    w = find_separating_cycle(t, len_max, min_side, c.threads);
  json j;
  j["input"] = in;
  j["len_max"] = len_max;
  j["seed"] = c.seed;
  j["config_hash"] = hex64(fnv1a(in + std::to_string(len_max) + std::to_string(min_side)));
  j["witness"] = witness_json(w);
  const std::string text = j.dump(2) + "\n";
  if (c.out.empty())
    std::cout << text;
  else
    write_text(c.out, text);
  return 0;
}

int cmd_exact(std::int64_t n, const std::string& report, double eps, std::int64_t bound,
              const CommonOpts& c) {
  const auto g = build_flip_graph(n, bound);
  json j;
  j["n"] = n;
  j["states"] = g.size();
  j["seed"] = c.seed;
  j["config_hash"] = hex64(fnv1a("exact" + std::to_string(n) + report));
  if (report == "stationarity" || report == "all" || report == "mixing") {
    const auto s = stationarity_report(g);
    j["symmetric"] = s.symmetric;
    j["doubly_stochastic"] = s.doubly_stochastic;
    j["uniform_stationary"] = s.uniform_stationary;
    j["irreducible"] = s.irreducible;
    j["aperiodic"] = s.aperiodic;
    j["states_with_self_loop"] = s.states_with_self_loop;
  }
  if (report == "connectivity" || report == "all" || report == "mixing") {
    const auto cr = connectivity_and_diameter(g);
    j["connected"] = cr.connected;
    j["diameter"] = cr.diameter;
  }
  if (report == "mixing" || report == "all") {
    const auto m = mixing_exact(g, eps);
    j["spectral_gap"] = m.spectral_gap;
    j["second_eigenvalue"] = m.second_eigenvalue;
    j["t_mix_quarter"] = m.t_mix;
    j["eps"] = m.eps;
    j["tv_curve"] = m.tv_curve;
    j["route_difference"] = m.route_difference;
  }
  const std::string text = j.dump(2) + "\n";
  if (c.out.empty())
    std::cout << text;
  else
    write_text(c.out, text);
  return 0;
}

int cmd_lowerbound_signal(std::int64_t n, const std::string& k_expr, const std::string& ell_expr,
                          const std::string& min_side_expr, const CommonOpts& c) {
  const std::int64_t k_n = eval_schedule(k_expr, n);
  const std::int64_t ell = eval_schedule(ell_expr, n);
  const std::int64_t min_side = eval_schedule(min_side_expr, n);
  if (ell < 1) throw std::invalid_argument("ell must evaluate to >= 1");
  struct Row {
    bool chain_found = false, control_found = false;
    std::int64_t chain_len = -1, control_len = -1;
    std::int64_t Ptilde = 0, Vtilde = 0;
  };
  std::vector<Row> rows(c.replicas);
  parallel_replicas(c.replicas, c.threads, [&](std::int64_t i) {
    Row row;
    {
      Rng rng(replica_seed(c.seed, 2 * static_cast<std::uint64_t>(i)));
      FrontierTracker tr(glued_initial(n, rng));
      for (std::int64_t k = 0; k < k_n; ++k) tr.step(rng);
      row.Ptilde = tr.Ptilde();
      row.Vtilde = tr.Vtilde();
      const auto w = find_separating_cycle(tr.map(), ell, min_side, 1);
      row.chain_found = w.has_value();
      if (w) row.chain_len = w->length();
    }
    {
      Rng rng(replica_seed(c.seed, 2 * static_cast<std::uint64_t>(i) + 1));
      const auto t = sample_sphere(n, rng);
      const auto w = find_separating_cycle(t, ell, min_side, 1);
      row.control_found = w.has_value();
      if (w) row.control_len = w->length();
    }
    rows[i] = row;
  });
  std::int64_t chain_hits = 0, control_hits = 0;
  json jr = json::array();
  for (std::int64_t i = 0; i < c.replicas; ++i) {
    chain_hits += rows[i].chain_found;
    control_hits += rows[i].control_found;
    jr.push_back({{"replica", i},
                  {"chain_found", rows[i].chain_found},
                  {"chain_len", rows[i].chain_len},
                  {"control_found", rows[i].control_found},
                  {"control_len", rows[i].control_len},
                  {"Ptilde", rows[i].Ptilde},
                  {"Vtilde", rows[i].Vtilde}});
  }
  const double fc = static_cast<double>(chain_hits) / static_cast<double>(c.replicas);
  const double fu = static_cast<double>(control_hits) / static_cast<double>(c.replicas);
  json j;
  j["n"] = n;
  j["k_n"] = k_n;
  j["ell_n"] = ell;
  j["min_side"] = min_side;
  j["replicas"] = c.replicas;
  j["seed"] = c.seed;
  j["config_hash"] =
      hex64(fnv1a(std::to_string(n) + k_expr + ell_expr + std::to_string(c.seed)));
  j["chain_frequency"] = fc;
  j["control_frequency"] = fu;
  j["tv_lower_bound"] = fc - fu;
  j["rows"] = jr;
  const std::string text = j.dump(2) + "\n";
  if (!c.out.empty()) write_text(c.out, text);
  std::cout << "n=" << n << " k_n=" << k_n << " ell_n=" << ell << " replicas=" << c.replicas
            << "\n"
            << "chain-start frequency:   " << fc << "\n"
            << "uniform-control frequency: " << fu << "\n"
            << "TV lower bound:          " << (fc - fu) << "\n";
  return 0;
}

int cmd_scaling(const std::string& n_list, const std::string& k_expr, const CommonOpts& c) {
  std::vector<std::int64_t> sizes;
  {
    std::stringstream ss(n_list);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) sizes.push_back(std::stoll(item));
  }
  if (sizes.size() < 3)
    throw std::invalid_argument("scaling: need at least 3 sizes in --n-list");
  json per_n = json::array();
  std::vector<double> log_n, log_maxP;
  for (const auto n : sizes) {
    const std::int64_t k_n = eval_schedule(k_expr, n);
    std::vector<double> maxP(c.replicas, 0.0);
    std::vector<double> tau_slopes(c.replicas, 0.0);
    parallel_replicas(c.replicas, c.threads, [&](std::int64_t i) {
      Rng rng(replica_seed(c.seed ^ static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(i)));
      FrontierTracker tr(glued_initial(n, rng));
      std::int64_t mp = 1;
      for (std::int64_t k = 0; k < k_n; ++k) {
        const auto rec = tr.step(rng);
        mp = std::max(mp, rec.Ptilde);
      }
      maxP[i] = static_cast<double>(mp);
      const auto& taus = tr.taus();
      if (taus.size() >= 4) {
        std::vector<double> lx, ly;
        for (std::size_t jj = 0; jj < taus.size(); ++jj) {
          if (taus[jj] <= 0) continue;
          lx.push_back(std::log(static_cast<double>(jj + 1)));
          ly.push_back(std::log(static_cast<double>(taus[jj])));
        }
        if (lx.size() >= 3) tau_slopes[i] = fit_line(lx, ly).slope;
      }
    });
    double mean_maxP = 0, mean_tau_slope = 0;
    std::int64_t slope_count = 0;
    for (std::int64_t i = 0; i < c.replicas; ++i) {
      mean_maxP += maxP[i];
      if (tau_slopes[i] != 0.0) {
        mean_tau_slope += tau_slopes[i];
        ++slope_count;
      }
    }
    mean_maxP /= static_cast<double>(c.replicas);
    if (slope_count > 0) mean_tau_slope /= static_cast<double>(slope_count);
    per_n.push_back({{"n", n},
                     {"k_n", k_n},
                     {"mean_max_Ptilde", mean_maxP},
                     {"mean_max_Ptilde_over_sqrt_n", mean_maxP / std::sqrt(static_cast<double>(n))},
                     {"mean_tau_loglog_slope", mean_tau_slope}});
    log_n.push_back(std::log(static_cast<double>(n)));
    log_maxP.push_back(std::log(mean_maxP));
  }
  const auto fit = fit_line(log_n, log_maxP);
  json j;
  j["seed"] = c.seed;
  j["k_expr"] = k_expr;
  j["config_hash"] = hex64(fnv1a(n_list + k_expr + std::to_string(c.seed)));
  j["per_n"] = per_n;
  j["max_Ptilde_vs_n_slope"] = fit.slope;
  j["max_Ptilde_vs_n_slope_stderr"] = fit.slope_stderr;
  const std::string text = j.dump(2) + "\n";
  if (!c.out.empty()) write_text(c.out, text);
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edge-flip Markov chains on type-I sphere triangulations"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonOpts common;

  // count
  auto* count = app.add_subcommand("count", "exact number of triangulations");
  std::int64_t count_n = 4, count_p = -1;
  count->add_option("--n", count_n, "vertices (sphere) or inner vertices (with --p)")->required();
  auto* count_p_opt = count->add_option("--p", count_p, "boundary perimeter");

  // gen
  auto* gen = app.add_subcommand("gen", "exhaustive enumeration (canonical codes)");
  std::int64_t gen_n = 4, gen_p = -1, gen_bound = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n)->required();
  auto* gen_p_opt = gen->add_option("--p", gen_p);
  gen->add_option("--out", gen_out, "write codes here (one per line)");
  gen->add_option("--bound", gen_bound, "override the enumeration size bound");

  // sample
  auto* sample = app.add_subcommand("sample", "exact uniform sampler");
  std::int64_t sample_n = 100, sample_p = -1;
  sample->add_option("--n", sample_n)->required();
  auto* sample_p_opt = sample->add_option("--p", sample_p);
  sample->add_option("--seed", common.seed);
  sample->add_option("--out", common.out, "TRI1 output path");

  // chain
  auto* chain = app.add_subcommand("chain", "run the flip chain");
  std::int64_t chain_n = 100, chain_steps = 1000, chain_stride = 1;
  std::string chain_start;
  chain->add_option("--n", chain_n);
  chain->add_option("--steps", chain_steps)->required();
  chain->add_option("--seed", common.seed);
  chain->add_option("--replicas", common.replicas);
  chain->add_option("--record-stride", chain_stride);
  chain->add_option("--start", chain_start, "TRI1 start state (default: uniform sample)");
  chain->add_option("--out", common.out);
  chain->add_option("--threads", common.threads);

  // frontier
  auto* frontier = app.add_subcommand("frontier", "glued start + frontier tracker");
  std::int64_t fr_n = 100, fr_steps = 1000;
  frontier->add_option("--n", fr_n)->required();
  frontier->add_option("--steps", fr_steps)->required();
  frontier->add_option("--seed", common.seed);
  frontier->add_option("--replicas", common.replicas);
  frontier->add_option("--out", common.out, "output prefix");
  frontier->add_option("--threads", common.threads);

  // cycles
  auto* cycles = app.add_subcommand("cycles", "separating / shield cycle search");
  std::string cyc_in;
  std::int64_t cyc_len = 10, cyc_min_side = 0, cyc_vol_max = 0;
  bool cyc_shield = false;
  cycles->add_option("--in", cyc_in, "TRI1 map")->required();
  cycles->add_option("--len-max", cyc_len);
  cycles->add_option("--min-side", cyc_min_side);
  cycles->add_flag("--shield", cyc_shield, "boundary shield search");
  cycles->add_option("--vol-max", cyc_vol_max);
  cycles->add_option("--out", common.out);
  cycles->add_option("--threads", common.threads);
  cycles->add_option("--seed", common.seed);

  // exact
  auto* exact = app.add_subcommand("exact", "exact flip-graph analysis");
  std::int64_t ex_n = 4, ex_bound = 5;
  std::string ex_report = "all";
  double ex_eps = 0.25;
  exact->add_option("--n", ex_n)->required();
  exact->add_option("--report", ex_report, "stationarity|connectivity|mixing|all");
  exact->add_option("--eps", ex_eps);
  exact->add_option("--bound", ex_bound, "state-space size guard (n <= bound)");
  exact->add_option("--out", common.out);

  // lowerbound-signal
  auto* lbs = app.add_subcommand("lowerbound-signal", "glued-start vs uniform cycle statistic");
  std::int64_t lbs_n = 10000;
  std::string lbs_k = "n", lbs_ell = "floor(n^(1/4))", lbs_min_side = "ceil(n/4)";
  lbs->add_option("--n", lbs_n)->required();
  lbs->add_option("--k", lbs_k, "flip count schedule, e.g. n or n^(5/4)/log(n)");
  lbs->add_option("--ell", lbs_ell, "cycle length bound schedule");
  lbs->add_option("--min-side", lbs_min_side, "side volume bound schedule");
  lbs->add_option("--seed", common.seed);
  lbs->add_option("--replicas", common.replicas);
  lbs->add_option("--out", common.out);
  lbs->add_option("--threads", common.threads);

  // scaling
  auto* scaling = app.add_subcommand("scaling", "frontier scaling exponents across sizes");
  std::string sc_nlist, sc_k = "n";
  scaling->add_option("--n-list", sc_nlist, "comma separated sizes")->required();
  scaling->add_option("--k", sc_k, "steps schedule");
  scaling->add_option("--seed", common.seed);
  scaling->add_option("--replicas", common.replicas);
  scaling->add_option("--out", common.out);
  scaling->add_option("--threads", common.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(count)) return cmd_count(count_n, count_p, count_p_opt->count() > 0);
    if (app.got_subcommand(gen))
      return cmd_gen(gen_n, gen_p, gen_p_opt->count() > 0, gen_out, gen_bound);
    if (app.got_subcommand(sample))
      return cmd_sample(sample_n, sample_p, sample_p_opt->count() > 0, common);
    if (app.got_subcommand(chain))
      return cmd_chain(chain_n, chain_steps, chain_stride, chain_start, common);
    if (app.got_subcommand(frontier)) return cmd_frontier(fr_n, fr_steps, common);
    if (app.got_subcommand(cycles))
      return cmd_cycles(cyc_in, cyc_len, cyc_min_side, cyc_shield, cyc_vol_max, common);
    if (app.got_subcommand(exact)) return cmd_exact(ex_n, ex_report, ex_eps, ex_bound, common);
    if (app.got_subcommand(lbs)) return cmd_lowerbound_signal(lbs_n, lbs_k, lbs_ell, lbs_min_side, common);
    if (app.got_subcommand(scaling)) return cmd_scaling(sc_nlist, sc_k, common);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
