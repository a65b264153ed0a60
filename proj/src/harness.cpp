// SPDX-License-Identifier: Apache-2.0
#include "irsopt/harness.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "irsopt/baselines.hpp"
#include "irsopt/config_io.hpp"
#include "irsopt/rng.hpp"

namespace irsopt {

namespace {

constexpr double kLn2 = std::numbers::ln2;

void write_output(const HarnessOptions& opt, const std::string& csv, const nlohmann::json& rows) {
    if (opt.out_path.empty()) {
        std::cout << csv;
        return;
    }
    std::ofstream out(opt.out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + opt.out_path);
    out << csv;
    if (opt.json_mirror) {
        std::ofstream jout(opt.out_path + ".json");
        jout << rows.dump(2) << "\n";
    }
}

std::string header_block(const HarnessOptions& opt, const std::string& command) {
    std::ostringstream os;
    os << "# command=" << command << "\n"
       << "# seed=" << opt.seed << "\n"
       << "# trials=" << opt.trials << "\n"
       << "# M=" << opt.config.M << "\n"
       << "# K=" << opt.config.K << "\n"
       << "# N=" << opt.config.N << "\n"
       << "# eta=" << opt.config.eta << "\n"
       << "# sigma2_dbm=" << 10.0 * std::log10(opt.config.sigma2[0]) + 30.0 << "\n"
       << "# p_max_dbm=" << 10.0 * std::log10(opt.config.p_max) + 30.0 << "\n"
       << "# alphabet=" << alphabet_name(opt.config.alphabet) << "\n";
    return os.str();
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
    MeanSe r;
    const double n = static_cast<double>(xs.size());
    for (double x : xs) r.mean += x;
    r.mean /= n;
    if (xs.size() > 1) {
        double s2 = 0.0;
        for (double x : xs) s2 += (x - r.mean) * (x - r.mean);
        r.se = std::sqrt(s2 / (n - 1.0) / n);
    }
    return r;
}

struct SchemeRates {
    // final rates in nats, one entry per trial, keyed by scheme order below
    std::vector<double> proposed_cp, proposed_l2, proposed_l4, quant_l2, quant_l4, no_irs;
};

// Runs the full scheme set on one realization. The rng drives the solver
// initializations in a fixed scheme order, so results are reproducible.
void run_scheme_set(const SystemConfig& base, const ChannelRealization& real,
                    std::mt19937_64& rng, const SolveOptions& sopt, int trial, SchemeRates& out) {
    SystemConfig cfg = base;

    cfg.alphabet = PhaseAlphabet::continuous();
    const SolveReport cp = solve(cfg, real, rng, sopt);
    out.proposed_cp[trial] = cp.sum_rate_nats;

    cfg.alphabet = PhaseAlphabet::discrete(2);
    out.proposed_l2[trial] = solve(cfg, real, rng, sopt).sum_rate_nats;

    cfg.alphabet = PhaseAlphabet::discrete(4);
    out.proposed_l4[trial] = solve(cfg, real, rng, sopt).sum_rate_nats;

    out.quant_l2[trial] = quantize_baseline(cp, 2, real, base, sopt.inner).sum_rate_nats;
    out.quant_l4[trial] = quantize_baseline(cp, 4, real, base, sopt.inner).sum_rate_nats;
    out.no_irs[trial] = no_irs_wmmse(base, real, rng, sopt).sum_rate_nats;
}

}  // namespace

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

int run_convergence(const HarnessOptions& opt) {
    std::vector<PhaseAlphabet> alphabets;
    if (opt.alphabet_override) {
        alphabets = {*opt.alphabet_override};
    } else {
        alphabets = {PhaseAlphabet::continuous(), PhaseAlphabet::discrete(2),
                     PhaseAlphabet::discrete(4)};
    }

    struct Trace {
        std::string scheme;
        int trial;
        std::vector<IterRecord> records;
    };
    std::vector<Trace> traces(alphabets.size() * opt.trials);

    parallel_for(opt.trials, opt.workers, [&](int trial) {
        std::mt19937_64 rng = trial_stream(opt.seed, trial);
        SystemConfig cfg = opt.config;
        const ChannelRealization real = sample_realization(cfg, rng);
        for (size_t a = 0; a < alphabets.size(); ++a) {
            cfg.alphabet = alphabets[a];
            const SolveReport rep = solve(cfg, real, rng, opt.solve_opt);
            traces[a * opt.trials + trial] = {alphabet_name(alphabets[a]), trial, rep.trace};
        }
    });

    std::ostringstream csv;
    csv << header_block(opt, "convergence");
    csv << "scheme,trial,iteration,lambda,phi_lambda,sum_rate_nats,sum_rate_bits,infeasibility\n";
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& tr : traces) {
        for (const auto& r : tr.records) {
            csv << tr.scheme << ',' << tr.trial << ',' << r.iteration << ',' << fmt(r.lambda)
                << ',' << fmt(r.phi) << ',' << fmt(r.sum_rate_nats) << ','
                << fmt(r.sum_rate_nats / kLn2) << ',' << fmt(r.infeasibility) << "\n";
            rows.push_back({{"scheme", tr.scheme},
                            {"trial", tr.trial},
                            {"iteration", r.iteration},
                            {"lambda", r.lambda},
                            {"phi_lambda", r.phi},
                            {"sum_rate_nats", r.sum_rate_nats},
                            {"sum_rate_bits", r.sum_rate_nats / kLn2},
                            {"infeasibility", r.infeasibility}});
        }
    }
    write_output(opt, csv.str(), rows);
    return 0;
}

namespace {

void emit_sweep_rows(std::ostringstream& csv, nlohmann::json& rows, const std::string& scheme,
                     int N, double p_dbm, const std::vector<double>& nats, int trials,
                     std::uint64_t seed) {
    std::vector<double> bits(nats.size());
    for (size_t i = 0; i < nats.size(); ++i) bits[i] = nats[i] / kLn2;
    const MeanSe ms = mean_se(bits);
    csv << scheme << ',' << N << ',' << fmt(p_dbm) << ',' << fmt(ms.mean) << ',' << fmt(ms.se)
        << ',' << trials << ',' << seed << "\n";
    rows.push_back({{"scheme", scheme},
                    {"N", N},
                    {"P_dBm", p_dbm},
                    {"mean_rate_bits", ms.mean},
                    {"se", ms.se},
                    {"trials", trials},
                    {"seed", seed}});
}

}  // namespace

int run_sweep_power(const HarnessOptions& opt) {
    std::ostringstream csv;
    csv << header_block(opt, "sweep-power");
    csv << "scheme,N,P_dBm,mean_rate_bits,se,trials,seed\n";
    nlohmann::json rows = nlohmann::json::array();

    for (double p_dbm : opt.p_list_dbm) {
        SystemConfig cfg = opt.config;
        cfg.p_max = dbm_to_watts(p_dbm);
        SchemeRates rates;
        for (auto* v : {&rates.proposed_cp, &rates.proposed_l2, &rates.proposed_l4,
                        &rates.quant_l2, &rates.quant_l4, &rates.no_irs})
            v->resize(opt.trials);
        parallel_for(opt.trials, opt.workers, [&](int trial) {
            std::mt19937_64 rng = trial_stream(opt.seed, trial);
            const ChannelRealization real = sample_realization(cfg, rng);
            run_scheme_set(cfg, real, rng, opt.solve_opt, trial, rates);
        });
        emit_sweep_rows(csv, rows, "proposed-cp", cfg.N, p_dbm, rates.proposed_cp, opt.trials,
                        opt.seed);
        emit_sweep_rows(csv, rows, "proposed-l2", cfg.N, p_dbm, rates.proposed_l2, opt.trials,
                        opt.seed);
        emit_sweep_rows(csv, rows, "proposed-l4", cfg.N, p_dbm, rates.proposed_l4, opt.trials,
                        opt.seed);
        emit_sweep_rows(csv, rows, "quantize-l2", cfg.N, p_dbm, rates.quant_l2, opt.trials,
                        opt.seed);
        emit_sweep_rows(csv, rows, "quantize-l4", cfg.N, p_dbm, rates.quant_l4, opt.trials,
                        opt.seed);
        emit_sweep_rows(csv, rows, "no-irs", cfg.N, p_dbm, rates.no_irs, opt.trials, opt.seed);
    }
    write_output(opt, csv.str(), rows);
    return 0;
}

int run_sweep_elements(const HarnessOptions& opt) {
    std::ostringstream csv;
    csv << header_block(opt, "sweep-elements");
    csv << "scheme,N,P_dBm,mean_rate_bits,se,trials,seed\n";
    nlohmann::json rows = nlohmann::json::array();
    const double p_dbm = 10.0 * std::log10(opt.config.p_max) + 30.0;

    for (int n_elem : opt.n_list) {
        SystemConfig cfg = opt.config;
        cfg.N = n_elem;
        SchemeRates rates;
        for (auto* v : {&rates.proposed_cp, &rates.proposed_l2, &rates.proposed_l4,
                        &rates.quant_l2, &rates.quant_l4, &rates.no_irs})
            v->resize(opt.trials);
        parallel_for(opt.trials, opt.workers, [&](int trial) {
            std::mt19937_64 rng = trial_stream(opt.seed, trial);
            const ChannelRealization real = sample_realization(cfg, rng);
            run_scheme_set(cfg, real, rng, opt.solve_opt, trial, rates);
        });
        emit_sweep_rows(csv, rows, "proposed-cp", n_elem, p_dbm, rates.proposed_cp, opt.trials,
                        opt.seed);
        emit_sweep_rows(csv, rows, "proposed-l2", n_elem, p_dbm, rates.proposed_l2, opt.trials,
                        opt.seed);
        emit_sweep_rows(csv, rows, "proposed-l4", n_elem, p_dbm, rates.proposed_l4, opt.trials,
                        opt.seed);
        emit_sweep_rows(csv, rows, "quantize-l2", n_elem, p_dbm, rates.quant_l2, opt.trials,
                        opt.seed);
        emit_sweep_rows(csv, rows, "quantize-l4", n_elem, p_dbm, rates.quant_l4, opt.trials,
                        opt.seed);
        emit_sweep_rows(csv, rows, "no-irs", n_elem, p_dbm, rates.no_irs, opt.trials, opt.seed);
    }
    write_output(opt, csv.str(), rows);
    return 0;
}

}  // namespace irsopt
