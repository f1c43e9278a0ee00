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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails. The first argument is
// the path to the emu binary (used by the CLI-facing criteria).

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qmt/qmt.hpp"
#include "support/helpers.hpp"

namespace {

namespace fs = std::filesystem;
using namespace qmt;

std::string g_emu_path;
fs::path g_work_dir;
int g_failures = 0;

void run_criterion(int number, const std::string& title,
                   const std::function<void(std::string&)>& body) {
    std::string detail;
    bool ok = true;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!ok) ++g_failures;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << title << " ["
              << static_cast<int>(seconds * 1000) << " ms]";
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << std::endl;
}

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw CheckFailure(message);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

int run_emu(const std::string& args) {
    require(!g_emu_path.empty(), "emu binary path not supplied on the command line");
    const std::string command = g_emu_path + " " + args + " > /dev/null 2>&1";
    return std::system(command.c_str());
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    return cells;
}

// --- criterion bodies -----------------------------------------------------

void oracle_equivalence(std::string& detail) {
    double worst_tonal = 0.0, worst_sampled = 0.0;
    for (int n = 1; n <= 6; ++n) {
        const FrequencyLayout layout = FrequencyLayout::octave(n);
        const int grid = 8 << n;
        std::mt19937_64 rng = make_stream(1001, "oracle-eq", n);
        for (int rep = 0; rep < 200; ++rep) {
            const StateVector psi = random_state(n, rng);
            const QubitGate g = haar_unitary(rng);
            const int qubit = static_cast<int>(rng() % n);
            const StateVector expected = apply_gate(psi, g, qubit);

            const StateVector tonal =
                demodulate(apply_gate(synthesize(psi, layout), layout, g, qubit), layout)
                    .state;
            worst_tonal =
                std::max(worst_tonal, test_support::max_component_error(tonal, expected));

            const StateVector sampled =
                demodulate(apply_gate(synthesize_sampled(psi, layout, grid), layout, g, qubit),
                           layout)
                    .state;
            worst_sampled =
                std::max(worst_sampled, test_support::max_component_error(sampled, expected));
        }
    }
    detail = "max error tonal " + format_double(worst_tonal) + ", sampled " +
             format_double(worst_sampled);
    require(worst_tonal <= 1e-12, "tonal error above 1e-12: " + detail);
    require(worst_sampled <= 1e-9, "sampled error above 1e-9: " + detail);
}

void example_pipeline(std::string& detail) {
    const fs::path dir = g_work_dir / "pipeline";
    fs::create_directories(dir);
    const std::string init_line =
        "init 0.6579-0.2895j 0.5385+0.1383j -0.2280+0.3953j -0.2460-0.4277j\n";
    write_file(dir / "synth.qc", "qubits 2\n" + init_line);
    write_file(dir / "gate.qc", "qubits 2\n" + init_line +
                                    "gate1 1 [[0.1759+0.1836j, 0.4346+0.8640j],"
                                    "[-0.4346+0.8640j, 0.1759-0.1836j]]\n");

    // Spectrum of the synthesized state: exactly four rows carrying the
    // fixture amplitudes.
    require(run_emu("run --circuit " + (dir / "synth.qc").string() + " --out " +
                    (dir / "synth_out").string()) == 0,
            "emu run failed on the synthesis circuit");
    const auto spectrum = split_lines(read_file(dir / "synth_out" / "spectrum.csv"));
    require(spectrum.size() == 5, "expected header plus exactly 4 spectrum rows, got " +
                                      std::to_string(spectrum.size() - 1));
    const StateVector ex = test_support::example_two_qubit_state();
    const struct {
        int k;
        cplx amp;
    } expected_rows[4] = {{-3, ex.amplitudes[3]},
                          {-1, ex.amplitudes[2]},
                          {1, ex.amplitudes[1]},
                          {3, ex.amplitudes[0]}};
    for (int i = 0; i < 4; ++i) {
        const auto cells = split_csv_row(spectrum[i + 1]);
        require(cells.size() == 4, "spectrum row has wrong arity");
        require(std::stoi(cells[0]) == expected_rows[i].k, "unexpected spectrum frequency");
        const double mag = std::hypot(std::stod(cells[2]), std::stod(cells[3]));
        require(std::abs(mag - std::abs(expected_rows[i].amp)) < 1e-9,
                "spectrum magnitude off at k=" + cells[0]);
    }

    // Gate applied to the high qubit: the CLI result equals the dense
    // matrix-vector product.
    require(run_emu("run --circuit " + (dir / "gate.qc").string() + " --out " +
                    (dir / "gate_out").string()) == 0,
            "emu run failed on the gate circuit");
    const StateVector oracle =
        test_support::kron_apply(ex, test_support::example_gate_unitary(), 1);
    const auto state_rows = split_lines(read_file(dir / "gate_out" / "state.csv"));
    require(state_rows.size() == 5, "state.csv should hold 4 amplitudes");
    double worst = 0.0;
    for (int x = 0; x < 4; ++x) {
        const auto cells = split_csv_row(state_rows[x + 1]);
        const cplx got{std::stod(cells[2]), std::stod(cells[3])};
        worst = std::max(worst, std::abs(got - oracle.amplitudes[x]));
    }
    detail = "max amplitude error " + format_double(worst);
    require(worst <= 1e-9, "pipeline deviates from the dense product: " + detail);
}

void measurement_statistics(std::string& detail) {
    // Bell circuit at 1e4 shots.
    const auto bell = parse_program("qubits 2\nh 1\ncnot 1 0\nmeasure_all\n");
    require(bell.ok(), "internal: Bell program failed to parse");
    const FrequencyLayout two = FrequencyLayout::octave(2);
    const Histogram bell_hist = sample_shots(
        bell.program, two, synthesize(bell.program.initial_state(), two), 10000, 4242);
    require(bell_hist.counts[1] == 0 && bell_hist.counts[2] == 0,
            "Bell sampling produced an impossible outcome");
    const auto bell_cs =
        test_support::chi_square_stat(bell_hist.counts, {0.5, 0.0, 0.0, 0.5}, 10000);
    const double bell_p = test_support::chi_square_pvalue(bell_cs);
    require(bell_p >= 1e-3, "Bell chi-square p=" + format_double(bell_p));

    // Three random 3-qubit circuits at 1e5 shots each.
    const int n = 3;
    const FrequencyLayout layout = FrequencyLayout::octave(n);
    std::string ps;
    for (int circuit = 0; circuit < 3; ++circuit) {
        std::mt19937_64 rng = make_stream(1003, "stat-circuits", circuit);
        CircuitProgram program;
        program.num_qubits = n;
        StateVector oracle = basis_state(0, n);
        for (int g = 0; g < 10; ++g) {
            Instruction ins;
            if (g % 3 == 2) {
                ins.kind = Instruction::Kind::ControlledGate;
                ins.mnemonic = "cgate";
                ins.control = static_cast<int>(rng() % n);
                ins.target = (ins.control + 1 + static_cast<int>(rng() % (n - 1))) % n;
                ins.gate = haar_unitary(rng);
                oracle = apply_controlled(oracle, ins.gate, ins.control, ins.target);
            } else {
                ins.kind = Instruction::Kind::Gate1;
                ins.mnemonic = "gate1";
                ins.target = static_cast<int>(rng() % n);
                ins.gate = haar_unitary(rng);
                oracle = apply_gate(oracle, ins.gate, ins.target);
            }
            program.instructions.push_back(ins);
        }
        const Histogram hist =
            sample_shots(program, layout, synthesize(basis_state(0, n), layout), 100000,
                         5000 + circuit);
        const auto cs =
            test_support::chi_square_stat(hist.counts, born_distribution(oracle), 100000);
        const double p = test_support::chi_square_pvalue(cs);
        ps += (circuit ? ", " : "") + format_double(p);
        require(p >= 1e-3, "random-circuit chi-square p=" + format_double(p));
    }
    detail = "Bell p=" + format_double(bell_p) + "; circuit p=" + ps;
}

void filter_disjointness(std::string& detail) {
    long long checked = 0;
    for (int n = 1; n <= 12; ++n) {
        const FrequencyLayout layout = FrequencyLayout::octave(n);
        for (int qubit = 0; qubit < n; ++qubit) {
            const CombFilterSpec spec = CombFilterSpec::for_layout(layout.reduced(qubit));
            const int shift = 2 * layout.carrier(qubit);
            for (int k : spec.keep) {
                require(spec.keep.count(k - shift) == 0 && spec.keep.count(k + shift) == 0,
                        "keep-set collision at n=" + std::to_string(n) +
                            " qubit=" + std::to_string(qubit) + " k=" + std::to_string(k));
                ++checked;
            }
        }
    }
    detail = std::to_string(checked) + " (n, qubit, k) combinations";
}

void power_shortcut_audit(std::string& detail) {
    const double w0 = 2.0 * std::numbers::pi * 1000.0;
    // Property: on signals with real coefficients the shortcut is exact.
    std::mt19937_64 rng = make_stream(1005, "shortcut");
    double worst = 0.0;
    for (int rep = 0; rep < 500; ++rep) {
        TonalSignal sig;
        sig.omega0 = w0;
        const int n = 1 + static_cast<int>(rng() % 3);
        const FrequencyLayout layout = FrequencyLayout::octave(n);
        for (std::uint64_t x = 0; x < layout.dimension(); ++x) {
            sig.coefficients[layout.basis_frequency(x)] = cplx{standard_normal(rng), 0.0};
        }
        worst = std::max(worst, std::abs(rms_sum_trick(sig) - rms_power(sig)));
    }
    require(worst <= 1e-10,
            "shortcut broke on a real-coefficient state: " + format_double(worst));

    // Documented counterexample: the shortcut doubles the true power.
    TonalSignal counter;
    counter.omega0 = w0;
    const double r = 1.0 / std::numbers::sqrt2;
    counter.coefficients.emplace(1, cplx{r, 0.0});
    counter.coefficients.emplace(-1, cplx{0.0, r});
    require(std::abs(rms_sum_trick(counter) - 2.0) <= 1e-10,
            "counterexample shortcut value is not 2");
    require(std::abs(rms_power(counter) - 1.0) <= 1e-10,
            "counterexample true power is not 1");
    detail = "real-coefficient worst gap " + format_double(worst) +
             "; counterexample 2.0 vs 1.0";
}

void tomography(std::string& detail) {
    const StateVector singlet = test_support::singlet_state();
    const ComplexMatrix target = pure_density(singlet);

    const TomoDataset exact = exact_tomo_dataset(singlet, 1000.0);
    const MleResult exact_mle = qst_mle(exact, qst_linear_inversion(exact));
    const double exact_f = fidelity_mixed(exact_mle.rho, target);
    require(exact_f >= 1.0 - 1e-6, "exact-probability fidelity " + format_double(exact_f));

    const FrequencyLayout layout = FrequencyLayout::octave(2);
    std::vector<double> fidelities;
    for (int trial = 0; trial < 20; ++trial) {
        const TomoDataset data = collect_tomo_data(singlet, layout, 1000, 9100 + trial);
        const MleResult mle = qst_mle(data, qst_linear_inversion(data));
        fidelities.push_back(fidelity_mixed(mle.rho, target));
    }
    std::sort(fidelities.begin(), fidelities.end());
    const double median = 0.5 * (fidelities[9] + fidelities[10]);
    require(median >= 0.99, "sampled median fidelity " + format_double(median));

    // Same exact-probability floor through the CLI.
    const fs::path dir = g_work_dir / "tomo";
    fs::create_directories(dir);
    write_file(dir / "singlet.qc", "qubits 2\ninit singlet\n");
    require(run_emu("tomo --circuit " + (dir / "singlet.qc").string() + " --exact --out " +
                    (dir / "out").string()) == 0,
            "emu tomo --exact failed");
    const auto report = split_lines(read_file(dir / "out" / "report.csv"));
    require(report.size() == 2, "report.csv should hold one data row");
    const double cli_f = std::stod(split_csv_row(report[1])[0]);
    require(cli_f >= 1.0 - 1e-6, "CLI exact-mode fidelity " + format_double(cli_f));
    detail = "exact " + format_double(exact_f) + "; sampled median " + format_double(median) +
             "; CLI exact " + format_double(cli_f);
}

void fidelity_ensembles(std::string& detail) {
    EnsembleConfig config;
    config.base_state = test_support::singlet_state();
    config.noise.coefficient_jitter = kCalibratedCoefficientJitter;
    config.realizations = 500;
    config.seed = 2026;

    config.kind = EnsembleKind::StateSynthesis;
    const EnsembleResult state = fidelity_histogram(config);
    config.kind = EnsembleKind::HaarGate;
    const EnsembleResult gate = fidelity_histogram(config);

    detail = "state mean " + format_double(state.mean) + ", gate mean " +
             format_double(gate.mean) + " at jitter " +
             format_double(kCalibratedCoefficientJitter);
    require(state.mean >= 0.985 && state.mean <= 0.995,
            "state-synthesis mean out of band: " + detail);
    require(gate.mean >= 0.982 && gate.mean <= 0.995,
            "gate-ensemble mean out of band: " + detail);
    require(state.fidelities.size() == 500 && gate.fidelities.size() == 500,
            "ensembles must hold 500 realizations");
}

void fidelity_consistency(std::string& detail) {
    std::mt19937_64 rng = make_stream(1008, "fid-consistency");
    double worst = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 2);
        const StateVector a = random_state(n, rng);
        const StateVector b = random_state(n, rng);
        const double gap =
            std::abs(fidelity_mixed(pure_density(a), pure_density(b)) - fidelity_pure(a, b));
        worst = std::max(worst, gap);
    }
    detail = "worst |mixed - pure| = " + format_double(worst);
    require(worst <= 1e-10, detail);
}

void resource_estimator(std::string& detail) {
    const ResourceEstimate ten = resource_estimate(10, 1e6);
    require(ten.gate_time_s == 1e-6, "gate time at (10, 1 MHz) is not 1 us");
    require(ten.bandwidth_hz == 1024.0 * 1e6, "bandwidth at (10, 1 MHz) is not 2^10 f0");

    const ResourceEstimate two = resource_estimate(2, 1000.0);
    require(two.bandwidth_hz == 4000.0, "bandwidth at (2, 1 kHz) is not 4 kHz");
    require(two.comb_passbands == 1, "passband count at n=2 is not 1");
    require(two.projection_ops_per_2q_gate == 2, "projection count at n=2 is not 2");

    const ResourceEstimate twenty = resource_estimate(20, 1e6);
    require(twenty.bandwidth_hz == std::ldexp(1e6, 20), "bandwidth formula broke at n=20");
    require(twenty.comb_passbands == (1 << 18), "passband formula broke at n=20");

    for (int n = 1; n <= 24; ++n) {
        const ResourceEstimate est = resource_estimate(n, 750.0);
        require(est.bandwidth_hz == std::ldexp(750.0, n), "bandwidth formula");
        require(est.comb_passbands == (n >= 2 ? (std::int64_t{1} << (n - 2)) : 0),
                "passband formula");
        require(est.projection_ops_per_2q_gate == std::int64_t{n} * (n - 1),
                "projection-op formula");
    }
    detail = "(10 qubits, 1 MHz) -> 1 us gate, 1.024 GHz band";
}

void cli_determinism(std::string& detail) {
    const fs::path dir = g_work_dir / "determinism";
    fs::create_directories(dir);
    write_file(dir / "bell.qc", "qubits 2\nh 1\ncnot 1 0\nmeasure_all\n");
    write_file(dir / "prep.qc", "qubits 2\ninit singlet\n");

    const std::string sample_args = "sample --circuit " + (dir / "bell.qc").string() +
                                    " --shots 2000 --seed 31415 --shot-log --out ";
    require(run_emu(sample_args + (dir / "a").string()) == 0, "emu sample run 1 failed");
    require(run_emu(sample_args + (dir / "b").string()) == 0, "emu sample run 2 failed");
    require(read_file(dir / "a" / "histogram.csv") == read_file(dir / "b" / "histogram.csv"),
            "histogram.csv differs between identical runs");
    require(read_file(dir / "a" / "shots.csv") == read_file(dir / "b" / "shots.csv"),
            "shots.csv differs between identical runs");

    const std::string tomo_args = "tomo --circuit " + (dir / "prep.qc").string() +
                                  " --shots-per-setting 200 --seed 99 --out ";
    require(run_emu(tomo_args + (dir / "ta").string()) == 0, "emu tomo run 1 failed");
    require(run_emu(tomo_args + (dir / "tb").string()) == 0, "emu tomo run 2 failed");
    for (const char* name : {"rho.txt", "dataset.csv", "report.csv"}) {
        require(read_file(dir / "ta" / name) == read_file(dir / "tb" / name),
                std::string(name) + " differs between identical runs");
    }

    const std::string run_args = "run --circuit " + (dir / "bell.qc").string() +
                                 " --backend sampled --noise-sigma 0.05 --seed 7 --out ";
    require(run_emu(run_args + (dir / "ra").string()) == 0, "emu run 1 failed");
    require(run_emu(run_args + (dir / "rb").string()) == 0, "emu run 2 failed");
    for (const char* name : {"state.csv", "spectrum.csv", "signal.csv"}) {
        require(read_file(dir / "ra" / name) == read_file(dir / "rb" / name),
                std::string(name) + " differs between identical runs");
    }

    const std::string est_args = "estimate --qubits 10 --f0 1e6 --out ";
    require(run_emu(est_args + (dir / "ea").string()) == 0, "emu estimate run 1 failed");
    require(run_emu(est_args + (dir / "eb").string()) == 0, "emu estimate run 2 failed");
    require(read_file(dir / "ea" / "estimate.csv") == read_file(dir / "eb" / "estimate.csv"),
            "estimate.csv differs between identical runs");
    detail = "sample, tomo, noisy run, and estimate are byte-identical under fixed seeds";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) g_emu_path = argv[1];
    g_work_dir = fs::temp_directory_path() /
                 ("qmt_acceptance_" + std::to_string(static_cast<unsigned>(::getpid())));
    fs::create_directories(g_work_dir);

    run_criterion(1, "signal gate chain matches the state-vector oracle", oracle_equivalence);
    run_criterion(2, "worked two-qubit example reproduces spectrum and gate output",
                  example_pipeline);
    run_criterion(3, "measurement statistics pass chi-square against Born probabilities",
                  measurement_statistics);
    run_criterion(4, "comb keep-sets are disjoint from their shifted images",
                  filter_disjointness);
    run_criterion(5, "single-rail power shortcut audited against true RMS power",
                  power_shortcut_audit);
    run_criterion(6, "MLE tomography reconstructs the singlet", tomography);
    run_criterion(7, "noise-calibrated fidelity ensembles land in the reported bands",
                  fidelity_ensembles);
    run_criterion(8, "mixed-state fidelity agrees with pure overlap on projectors",
                  fidelity_consistency);
    run_criterion(9, "resource estimator matches the scaling formulas", resource_estimator);
    run_criterion(10, "CLI commands are byte-deterministic under fixed seeds",
                  cli_determinism);

    std::error_code ec;
    fs::remove_all(g_work_dir, ec);

    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
