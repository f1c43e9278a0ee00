// Copyright 2026 The qmt-emu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run circuits end to end, sample measurement
// histograms, run two-qubit state tomography, and print hardware resource
// estimates. Every command is deterministic under a fixed --seed and
// emits CSV files suitable for external plotting.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qmt/qmt.hpp"

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
    std::string circuit_path;
    std::string backend = "tonal";
    int samples_per_period = 0;
    int periods = 1;
    std::uint64_t seed = 0;
    double noise_sigma = 0.0;
    double jitter = 0.0;
    double gain_imbalance = 0.0;
    double phase_skew = 0.0;
    int fir_taps = 0;
    bool strict_unitary = false;
    std::string out_dir = ".";
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool with_circuit = true) {
    if (with_circuit) {
        cmd->add_option("--circuit", opt.circuit_path, "Circuit file")->required();
    }
    cmd->add_option("--backend", opt.backend, "Signal backend: tonal or sampled")
        ->check(CLI::IsMember({"tonal", "sampled"}));
    cmd->add_option("--samples-per-period", opt.samples_per_period,
                    "Samples per fundamental period (sampled backend; 0 = auto)");
    cmd->add_option("--periods", opt.periods, "Rendered periods (sampled backend)");
    cmd->add_option("--seed", opt.seed, "Run seed; all randomness derives from it");
    cmd->add_option("--noise-sigma", opt.noise_sigma, "AWGN sigma per rail (sampled)");
    cmd->add_option("--jitter", opt.jitter, "Synthesis coefficient jitter");
    cmd->add_option("--gain-imbalance", opt.gain_imbalance, "Rail gain mismatch (sampled)");
    cmd->add_option("--phase-skew", opt.phase_skew, "Quadrature skew in radians (sampled)");
    cmd->add_option("--fir-taps", opt.fir_taps,
                    "Odd FIR comb tap count (sampled; 0 = ideal brick wall)");
    cmd->add_flag("--strict-unitary", opt.strict_unitary,
                  "Reject gates that are not unitary to 1e-10");
    cmd->add_option("--out", opt.out_dir, "Output directory for CSV files");
}

qmt::NoiseConfig noise_of(const CommonOptions& opt) {
    qmt::NoiseConfig noise;
    noise.awgn_sigma = opt.noise_sigma;
    noise.gain_imbalance = opt.gain_imbalance;
    noise.phase_skew = opt.phase_skew;
    noise.coefficient_jitter = opt.jitter;
    return noise;
}

qmt::EngineOptions engine_of(const CommonOptions& opt) {
    qmt::EngineOptions engine;
    engine.unitarity_tolerance = opt.strict_unitary ? qmt::kStrictUnitarityTolerance
                                                    : qmt::kDefaultUnitarityTolerance;
    engine.comb.fir_taps = opt.fir_taps;
    return engine;
}

bool rail_noise_requested(const CommonOptions& opt) {
    return opt.noise_sigma != 0.0 || opt.gain_imbalance != 0.0 || opt.phase_skew != 0.0;
}

void check_backend_consistency(const CommonOptions& opt) {
    if (opt.backend == "tonal" && (rail_noise_requested(opt) || opt.fir_taps != 0)) {
        throw std::invalid_argument(
            "rail noise and FIR combs act on waveforms; use --backend sampled");
    }
    if (opt.periods < 1) {
        throw std::invalid_argument("--periods must be at least 1");
    }
}

qmt::CircuitProgram load_program(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open circuit file: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const qmt::ParseResult parsed = qmt::parse_program(buffer.str());
    if (!parsed.ok()) {
        std::string message = "circuit errors in " + path + ":";
        for (const qmt::ParseError& e : parsed.errors) {
            message += "\n  line " + std::to_string(e.line) + ": " + e.message;
        }
        throw std::runtime_error(message);
    }
    return parsed.program;
}

int sampling_grid(const CommonOptions& opt, int num_qubits) {
    const int floor = qmt::oversampling_floor(num_qubits);
    if (opt.samples_per_period == 0) return floor;
    if (opt.samples_per_period < floor ||
        opt.samples_per_period % (1 << num_qubits) != 0) {
        throw std::invalid_argument(
            "--samples-per-period must be a multiple of 2^n and at least " +
            std::to_string(floor));
    }
    return opt.samples_per_period;
}

std::ofstream open_output(const CommonOptions& opt, const std::string& name) {
    fs::create_directories(opt.out_dir);
    const fs::path path = fs::path(opt.out_dir) / name;
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

void print_shot(const qmt::MeasurementShot& shot) {
    if (shot.bits.empty()) return;
    std::cout << "measurements (qubit:bit u p0):";
    for (std::size_t k = 0; k < shot.bits.size(); ++k) {
        std::cout << "  " << shot.order[k] << ':' << shot.bits[k] << ' '
                  << qmt::format_double(shot.u_draws[k]) << ' '
                  << qmt::format_double(shot.p0s[k]);
    }
    std::cout << '\n';
}

int cmd_run(const CommonOptions& opt) {
    check_backend_consistency(opt);
    const qmt::CircuitProgram program = load_program(opt.circuit_path);
    const qmt::FrequencyLayout layout = qmt::FrequencyLayout::octave(program.num_qubits);
    const qmt::EngineOptions engine = engine_of(opt);
    const qmt::NoiseConfig noise = noise_of(opt);

    std::mt19937_64 noise_rng = qmt::make_stream(opt.seed, "noise");
    std::mt19937_64 measure_rng = qmt::make_stream(opt.seed, "run");
    const qmt::StateVector initial =
        qmt::perturb_coefficients(program.initial_state(), noise.coefficient_jitter, noise_rng);

    qmt::StateVector final_state;
    double residual = 0.0;
    qmt::TonalSignal spectrum;
    if (opt.backend == "tonal") {
        const auto run = qmt::run_circuit(program, qmt::synthesize(initial, layout), layout,
                                          engine, measure_rng);
        spectrum = run.signal;
        const qmt::Demodulated demod = qmt::demodulate(run.signal, layout);
        final_state = demod.state;
        residual = demod.residual;
        print_shot(run.shot);
    } else {
        const int grid = sampling_grid(opt, program.num_qubits);
        qmt::SampledSignal sig = qmt::synthesize_sampled(initial, layout, grid, opt.periods);
        auto run = qmt::run_circuit(program, std::move(sig), layout, engine, measure_rng);
        run.signal = qmt::apply_rail_noise(run.signal, noise, noise_rng);
        const qmt::Demodulated demod = qmt::demodulate(run.signal, layout);
        final_state = demod.state;
        residual = demod.residual;
        spectrum = qmt::analyze(run.signal, 1e-9);
        auto samples_csv = open_output(opt, "signal.csv");
        qmt::write_samples_csv(samples_csv, run.signal);
        print_shot(run.shot);
    }

    auto state_csv = open_output(opt, "state.csv");
    qmt::write_state_csv(state_csv, final_state);
    auto spectrum_csv = open_output(opt, "spectrum.csv");
    qmt::write_spectrum_csv(spectrum_csv, spectrum);

    std::cout << "final amplitudes:\n";
    for (std::size_t x = 0; x < final_state.dimension(); ++x) {
        std::cout << "  |" << qmt::bitstring(x, final_state.num_qubits)
                  << "> = " << qmt::format_complex(final_state.amplitudes[x]) << '\n';
    }
    std::cout << "out-of-band residual: " << qmt::format_double(residual) << '\n';
    return 0;
}

int cmd_sample(const CommonOptions& opt, std::uint64_t shots, bool shot_log) {
    check_backend_consistency(opt);
    const qmt::CircuitProgram program = load_program(opt.circuit_path);
    const qmt::FrequencyLayout layout = qmt::FrequencyLayout::octave(program.num_qubits);
    const qmt::EngineOptions engine = engine_of(opt);
    const qmt::NoiseConfig noise = noise_of(opt);
    const qmt::StateVector initial = program.initial_state();

    std::vector<qmt::MeasurementShot> log;
    std::vector<qmt::MeasurementShot>* log_ptr = shot_log ? &log : nullptr;

    qmt::Histogram hist;
    if (opt.backend == "tonal") {
        if (noise.coefficient_jitter == 0.0) {
            hist = qmt::sample_shots(program, layout, qmt::synthesize(initial, layout), shots,
                                     opt.seed, engine, log_ptr);
        } else {
            auto source = [&](std::uint64_t, std::mt19937_64& rng) {
                return qmt::synthesize(
                    qmt::perturb_coefficients(initial, noise.coefficient_jitter, rng), layout);
            };
            hist = qmt::sample_shots_from_source<qmt::TonalSignal>(
                program, layout, source, shots, opt.seed, engine, log_ptr);
        }
    } else {
        const int grid = sampling_grid(opt, program.num_qubits);
        if (noise.is_ideal()) {
            hist = qmt::sample_shots(program, layout,
                                     qmt::synthesize_sampled(initial, layout, grid, opt.periods),
                                     shots, opt.seed, engine, log_ptr);
        } else {
            auto source = [&](std::uint64_t, std::mt19937_64& rng) {
                const qmt::StateVector jittered =
                    qmt::perturb_coefficients(initial, noise.coefficient_jitter, rng);
                return qmt::apply_rail_noise(
                    qmt::synthesize_sampled(jittered, layout, grid, opt.periods), noise, rng);
            };
            hist = qmt::sample_shots_from_source<qmt::SampledSignal>(
                program, layout, source, shots, opt.seed, engine, log_ptr);
        }
    }

    auto hist_csv = open_output(opt, "histogram.csv");
    qmt::write_histogram_csv(hist_csv, hist);
    if (shot_log) {
        auto shots_csv = open_output(opt, "shots.csv");
        qmt::write_shot_log_csv(shots_csv, log);
    }

    std::cout << "histogram over " << shots << " shots:\n";
    for (std::size_t x = 0; x < hist.counts.size(); ++x) {
        if (hist.counts[x] == 0) continue;
        std::cout << "  " << qmt::bitstring(x, hist.num_qubits) << "  " << hist.counts[x]
                  << '\n';
    }
    return 0;
}

int cmd_tomo(const CommonOptions& opt, std::uint64_t shots_per_setting, bool exact,
             bool dressed) {
    check_backend_consistency(opt);
    if (rail_noise_requested(opt)) {
        throw std::invalid_argument(
            "tomo models state-level noise only; use --jitter or --dressed");
    }
    const qmt::CircuitProgram program = load_program(opt.circuit_path);
    if (program.num_qubits != 2) {
        throw std::invalid_argument("tomo requires a two-qubit circuit");
    }
    if (program.has_measurement()) {
        throw std::invalid_argument("tomo circuits prepare a state; drop measure lines");
    }
    const qmt::FrequencyLayout layout = qmt::FrequencyLayout::octave(2);

    // Ideal prepared state: exact fold of the program.
    qmt::StateVector state = program.initial_state();
    for (const qmt::Instruction& ins : program.instructions) {
        state = ins.kind == qmt::Instruction::Kind::Gate1
                    ? qmt::apply_gate(state, ins.gate, ins.target)
                    : qmt::apply_controlled(state, ins.gate, ins.control, ins.target);
    }

    qmt::TomoOptions tomo_options;
    tomo_options.engine = engine_of(opt);
    tomo_options.samples_per_period =
        opt.backend == "sampled" ? sampling_grid(opt, 2) : 0;
    tomo_options.periods = opt.periods;

    qmt::TomoDataset data;
    if (exact) {
        data = qmt::exact_tomo_dataset(state, static_cast<double>(shots_per_setting));
    } else {
        const double jitter = opt.jitter;
        const bool noisy = dressed || jitter != 0.0;
        if (!noisy) {
            data = opt.backend == "tonal"
                       ? qmt::collect_tomo_data<qmt::TonalSignal>(state, layout,
                                                                  shots_per_setting, opt.seed,
                                                                  tomo_options)
                       : qmt::collect_tomo_data<qmt::SampledSignal>(state, layout,
                                                                    shots_per_setting, opt.seed,
                                                                    tomo_options);
        } else {
            const qmt::StateVector bare = qmt::normalized(state);
            qmt::StateSource source = [bare, dressed, jitter](std::uint64_t,
                                                              std::mt19937_64& rng) {
                qmt::StateVector s = bare;
                if (dressed) s = qmt::normalized(qmt::dress(s, rng).dressed);
                if (jitter != 0.0) s = qmt::perturb_coefficients(s, jitter, rng);
                return s;
            };
            data = opt.backend == "tonal"
                       ? qmt::collect_tomo_data<qmt::TonalSignal>(source, layout,
                                                                  shots_per_setting, opt.seed,
                                                                  tomo_options)
                       : qmt::collect_tomo_data<qmt::SampledSignal>(source, layout,
                                                                    shots_per_setting, opt.seed,
                                                                    tomo_options);
        }
    }

    const qmt::ComplexMatrix init = qmt::qst_linear_inversion(data);
    const qmt::MleResult mle = qmt::qst_mle(data, init);
    const double fidelity = qmt::fidelity_mixed(mle.rho, qmt::pure_density(state));

    auto rho_txt = open_output(opt, "rho.txt");
    qmt::write_complex_matrix(rho_txt, mle.rho);
    auto data_csv = open_output(opt, "dataset.csv");
    qmt::write_tomo_dataset_csv(data_csv, data);
    auto report_csv = open_output(opt, "report.csv");
    report_csv << "fidelity,log_likelihood,converged,iterations,shots_per_setting,exact\n"
               << qmt::format_double(fidelity) << ','
               << qmt::format_double(mle.log_likelihood) << ',' << (mle.converged ? 1 : 0)
               << ',' << mle.iterations << ',' << qmt::format_double(data.shots_per_setting)
               << ',' << (exact ? 1 : 0) << '\n';

    std::cout << "reconstruction fidelity vs ideal state: " << qmt::format_double(fidelity)
              << "\nlog-likelihood " << qmt::format_double(mle.log_likelihood)
              << (mle.converged ? " (converged in " : " (iteration cap at ")
              << mle.iterations << " iterations)\n";
    return 0;
}

int cmd_estimate(const CommonOptions& opt, int qubits, double f0) {
    const qmt::ResourceEstimate est = qmt::resource_estimate(qubits, f0);
    auto csv = open_output(opt, "estimate.csv");
    csv << "qubits,f0_hz,bandwidth_hz,gate_time_s,comb_passbands,projection_ops_per_2q_gate\n"
        << qubits << ',' << qmt::format_double(f0) << ','
        << qmt::format_double(est.bandwidth_hz) << ',' << qmt::format_double(est.gate_time_s)
        << ',' << est.comb_passbands << ',' << est.projection_ops_per_2q_gate << '\n';

    std::cout << "qubits: " << qubits << "\nbase frequency: " << qmt::format_double(f0)
              << " Hz\nbandwidth: " << qmt::format_double(est.bandwidth_hz)
              << " Hz\ngate time: " << qmt::format_double(est.gate_time_s)
              << " s\ncomb pass bands (positive): " << est.comb_passbands
              << "\nprojection ops per two-qubit gate: " << est.projection_ops_per_2q_gate
              << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum computer emulation over quadrature-modulated tonal signals"};
    app.require_subcommand(1);

    CommonOptions run_opt;
    CLI::App* run = app.add_subcommand("run", "Run a circuit and emit state/spectrum CSVs");
    add_common_flags(run, run_opt);

    CommonOptions sample_opt;
    std::uint64_t shots = 1024;
    bool shot_log = false;
    CLI::App* sample = app.add_subcommand("sample", "Sample measurement shots");
    add_common_flags(sample, sample_opt);
    sample->add_option("--shots", shots, "Number of shots");
    sample->add_flag("--shot-log", shot_log, "Also write per-shot draws to shots.csv");

    CommonOptions tomo_opt;
    std::uint64_t shots_per_setting = 1000;
    bool exact = false;
    bool dressed = false;
    CLI::App* tomo = app.add_subcommand("tomo", "Two-qubit state tomography");
    add_common_flags(tomo, tomo_opt);
    tomo->add_option("--shots-per-setting", shots_per_setting, "Shots per basis setting");
    tomo->add_flag("--exact", exact, "Inject exact probabilities instead of sampling");
    tomo->add_flag("--dressed", dressed, "Measure dressed (noise-added) realizations");

    CommonOptions est_opt;
    int qubits = 2;
    double f0 = 1000.0;
    CLI::App* estimate = app.add_subcommand("estimate", "Hardware resource estimates");
    estimate->add_option("--qubits", qubits, "Register size")->required();
    estimate->add_option("--f0", f0, "Base qubit frequency in Hz");
    estimate->add_option("--out", est_opt.out_dir, "Output directory for CSV files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(run_opt);
        if (sample->parsed()) return cmd_sample(sample_opt, shots, shot_log);
        if (tomo->parsed()) return cmd_tomo(tomo_opt, shots_per_setting, exact, dressed);
        if (estimate->parsed()) return cmd_estimate(est_opt, qubits, f0);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
