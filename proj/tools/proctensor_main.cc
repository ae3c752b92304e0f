// Copyright 2026 The proctensor Authors
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

// proctensor command-line front end.

#include <cstdio>
#include <optional>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "proctensor/bench.h"
#include "proctensor/catalog.h"
#include "proctensor/error.h"
#include "proctensor/instruments.h"
#include "proctensor/io.h"
#include "proctensor/memory.h"
#include "proctensor/parallel.h"
#include "proctensor/process.h"
#include "proctensor/recovery.h"
#include "proctensor/tomo.h"
#include "proctensor/walk.h"

namespace pt = proctensor;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitTolerance = 3;

// Thrown to end a command with the tolerance-failure exit code after output.
struct ToleranceFailure {};

bool is_named_state(const std::string& s) { return s == "lambda" || s == "omega"; }

std::vector<int> parse_dims(const std::string& s) {
    std::vector<int> dims;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            dims.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw pt::ValidationError("bad dimension list '" + s + "'");
        }
    }
    if (dims.empty()) throw pt::ValidationError("empty dimension list");
    return dims;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
    } else {
        pt::io::write_text_file(path, text);
    }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

pt::ProcessTensor load_process(const std::string& spec) {
    if (is_named_state(spec)) return pt::catalog::process_by_name(spec);
    return pt::io::process_from_json(pt::io::read_json_file(spec));
}

pt::Instrument load_instrument(const std::string& spec) {
    for (const char* n : {"theta", "tetra", "xi", "sharp", "z", "z3"})
        if (spec == n) return pt::instruments::by_name(spec);
    return pt::io::instrument_from_json(pt::io::read_json_file(spec), spec);
}

struct LoadedState {
    pt::Matrix matrix;
    std::vector<int> dims;
};

// A named state, or a file holding {"dims": [...], "matrix": {...}} or a bare
// matrix together with --dims.
LoadedState load_state(const std::string& spec, const std::string& dims_opt) {
    if (is_named_state(spec))
        return {pt::catalog::state_by_name(spec), spec == "lambda" ? pt::catalog::kLambdaDims : pt::catalog::kOmegaDims};
    const Json j = pt::io::read_json_file(spec);
    LoadedState s;
    if (j.contains("matrix")) {
        s.matrix = pt::io::matrix_from_json(j.at("matrix"));
        if (j.contains("dims")) s.dims = j.at("dims").get<std::vector<int>>();
    } else {
        s.matrix = pt::io::matrix_from_json(j);
    }
    if (!dims_opt.empty()) s.dims = parse_dims(dims_opt);
    if (s.dims.empty()) throw pt::ValidationError("state '" + spec + "' needs --dims");
    return s;
}

Json memory_report_json(const pt::memory::MemoryReport& m, const pt::Instrument& inst) {
    Json events = Json::array();
    for (std::size_t x = 0; x < m.events.size(); ++x) {
        Json e;
        e["label"] = inst.elements()[x].label;
        e["probability"] = m.events[x].probability;
        e["mutual_information"] = m.events[x].mutual_information;
        e["zero_probability"] = m.events[x].zero_probability;
        events.push_back(e);
    }
    Json j;
    j["instrument"] = inst.name();
    j["events"] = events;
    j["aggregate_uniform"] = m.aggregate_uniform;
    j["aggregate_weighted"] = m.aggregate_weighted;
    j["max_event"] = m.max_event;
    return j;
}

pt::recovery::ScanConvention parse_convention(const std::string& s) {
    if (s == "projector") return pt::recovery::ScanConvention::kProjector;
    if (s == "correlator") return pt::recovery::ScanConvention::kCorrelator;
    throw pt::ValidationError("convention must be projector or correlator");
}

pt::instruments::SamplingMeasure parse_measure(const std::string& s) {
    if (s == "haar") return pt::instruments::SamplingMeasure::kHaar;
    if (s == "uniform-angles") return pt::instruments::SamplingMeasure::kUniformAngles;
    throw pt::ValidationError("measure must be haar or uniform-angles");
}

pt::walk::WalkCircuit load_circuit(const std::string& spec) {
    if (spec == "theta" || spec == "tetra" || spec == "identity") return pt::walk::circuit_by_name(spec);
    return pt::walk::circuit_from_json(pt::io::read_json_file(spec));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"proctensor: multi-time quantum process toolkit"};
    app.require_subcommand(1);
    unsigned threads = 0;
    app.add_option("--threads", threads, "Worker threads (default: PROCTENSOR_THREADS or all cores)");

    // process
    auto* process = app.add_subcommand("process", "Build and validate process tensors");
    process->require_subcommand(1);
    std::string state_spec, dims_opt, outputs_opt, out_path, process_spec = "lambda";
    auto* process_build = process->add_subcommand("build", "Common-cause process from an initial state");
    process_build->add_option("--state", state_spec, "lambda, omega or a JSON file")->required();
    process_build->add_option("--dims", dims_opt, "Input leg dimensions, e.g. 2,2,2");
    process_build->add_option("--outputs", outputs_opt, "Output leg dimensions (default: all but the last input)");
    process_build->add_option("--out", out_path, "Output file (default stdout)");
    auto* process_validate = process->add_subcommand("validate", "Positivity, trace, causality, CP-divisibility");
    process_validate->add_option("--process", process_spec, "lambda, omega or a process JSON file");

    // states
    auto* states = app.add_subcommand("states", "Catalog states");
    states->require_subcommand(1);
    std::string state_name = "lambda", format = "json";
    auto* states_emit = states->add_subcommand("emit", "Print an initial state");
    states_emit->add_option("--name", state_name)->check(CLI::IsMember({"lambda", "omega"}));
    states_emit->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    states_emit->add_option("--out", out_path);

    // instrument
    auto* instrument = app.add_subcommand("instrument", "Inspect measurement instruments");
    instrument->require_subcommand(1);
    std::string instrument_spec = "theta";
    auto* inst_show = instrument->add_subcommand("show", "Print the effects");
    auto* inst_validate = instrument->add_subcommand("validate", "Positivity and completeness");
    auto* inst_dual = instrument->add_subcommand("dual", "Dual frame");
    for (auto* s : {inst_show, inst_validate, inst_dual})
        s->add_option("--name", instrument_spec, "theta, tetra, xi, sharp, z, z3 or a JSON file");

    // memory
    auto* mem = app.add_subcommand("memory", "Memory strength, non-Markovianity and surveys");
    mem->require_subcommand(1);
    std::string party = "B", measure = "haar";
    bool as_json = false;
    double cutoff = 0.0125;
    std::size_t samples = 100000;
    std::uint64_t seed = 1234;
    auto* mem_strength = mem->add_subcommand("strength", "Per-event mutual information");
    mem_strength->add_option("--process", process_spec);
    mem_strength->add_option("--instrument", instrument_spec);
    mem_strength->add_option("--party", party);
    mem_strength->add_flag("--json", as_json, "JSON instead of a table");
    auto* mem_nm = mem->add_subcommand("nm", "Non-Markovianity and CMI");
    mem_nm->add_option("--process", process_spec);
    auto* mem_survey = mem->add_subcommand("survey", "Random projective instruments below a cutoff");
    mem_survey->add_option("--process", process_spec);
    mem_survey->add_option("--cutoff", cutoff);
    mem_survey->add_option("--samples", samples);
    mem_survey->add_option("--seed", seed);
    mem_survey->add_option("--measure", measure)->check(CLI::IsMember({"haar", "uniform-angles"}));

    // recover
    auto* recover = app.add_subcommand("recover", "Recovered processes and deviation scans");
    recover->require_subcommand(1);
    std::string convention = "projector";
    int grid = 64, phase_steps = 1;
    double depolarizing = 0.0, misalignment = 0.0;
    auto* rec_build = recover->add_subcommand("build", "Recovered state from a blocking instrument");
    auto* rec_scan = recover->add_subcommand("scan", "Deviation between true and recovered expectation values");
    for (auto* s : {rec_build, rec_scan}) {
        s->add_option("--process", process_spec);
        s->add_option("--instrument", instrument_spec);
        s->add_option("--out", out_path);
    }
    rec_scan->add_option("--convention", convention)->check(CLI::IsMember({"projector", "correlator"}));
    rec_scan->add_option("--grid", grid, "Steps per theta over [0, pi/2]")->check(CLI::PositiveNumber);
    rec_scan->add_option("--phase-steps", phase_steps, "Steps per phase over [0, 2 pi] (1 keeps phases at 0)")
        ->check(CLI::PositiveNumber);
    rec_scan->add_option("--depolarizing", depolarizing, "Replay noise: depolarizing strength");
    rec_scan->add_option("--misalignment", misalignment, "Replay noise: local unitary scale");
    rec_scan->add_option("--seed", seed);

    // walk
    auto* walk = app.add_subcommand("walk", "Quantum-walk POVM circuits");
    walk->require_subcommand(1);
    std::string circuit_spec = "tetra", target_spec;
    auto* walk_verify = walk->add_subcommand("verify", "Extract the POVM and compare with a target");
    walk_verify->add_option("--circuit", circuit_spec, "theta, tetra, identity or a JSON file");
    walk_verify->add_option("--target", target_spec, "Instrument name or file (default: circuit name)");
    auto* walk_emit = walk->add_subcommand("emit", "Print a circuit as JSON");
    walk_emit->add_option("--circuit", circuit_spec);
    walk_emit->add_option("--out", out_path);

    // tomo
    auto* tomo = app.add_subcommand("tomo", "Simulated tomography");
    tomo->require_subcommand(1);
    std::uint64_t shots = 1000000;
    std::string counts_path, statistic = "non_markovianity";
    std::size_t resamples = 500;
    auto* tomo_sim = tomo->add_subcommand("simulate", "Multinomial counts for every setting (CSV)");
    tomo_sim->add_option("--state", state_spec, "lambda, omega or a JSON file")->required();
    tomo_sim->add_option("--dims", dims_opt);
    tomo_sim->add_option("--shots", shots);
    tomo_sim->add_option("--seed", seed);
    tomo_sim->add_option("--out", out_path);
    auto* tomo_rec = tomo->add_subcommand("reconstruct", "Linear inversion with spectral projection");
    auto* tomo_boot = tomo->add_subcommand("bootstrap", "Resampled statistic");
    for (auto* s : {tomo_rec, tomo_boot}) {
        s->add_option("--counts", counts_path, "Counts CSV")->required();
        s->add_option("--dims", dims_opt, "Leg dimensions (default 2,2,2)");
        s->add_option("--state", state_spec, "Reference state for the fidelity (and default dims)");
        s->add_option("--out", out_path);
    }
    tomo_boot->add_option("--statistic", statistic)->check(
        CLI::IsMember({"trace", "purity", "total_correlation", "non_markovianity"}));
    tomo_boot->add_option("--resamples", resamples);
    tomo_boot->add_option("--seed", seed);

    // presets
    auto* preset = app.add_subcommand("preset", "Reproduction bundles");
    std::string preset_name, config_path, preset_format;
    std::uint64_t preset_seed = 0;
    preset->add_option("name", preset_name, "process1, process2, walk, survey, tomo");
    preset->add_option("--config", config_path, "JSON run configuration");
    preset->add_option("--seed", preset_seed);
    preset->add_option("--out", out_path);
    preset->add_option("--format", preset_format)->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*process_build) {
            const LoadedState s = load_state(state_spec, dims_opt);
            std::vector<int> outs;
            if (!outputs_opt.empty()) outs = parse_dims(outputs_opt);
            else outs.assign(s.dims.begin(), s.dims.end() - 1);
            emit(dump(pt::io::process_to_json(pt::build_common_cause(s.matrix, s.dims, outs))), out_path);
        } else if (*process_validate) {
            const pt::ProcessTensor p = load_process(process_spec);
            const auto v = pt::validate(p);
            const auto c = pt::check_causality(p);
            Json j;
            j["hermiticity"] = v.hermiticity;
            j["min_eigenvalue"] = v.min_eigenvalue;
            j["trace_error"] = v.trace_error;
            Json levels = Json::array();
            for (const auto& l : c.levels)
                levels.push_back({{"traced_input", l.traced_input}, {"freed_output", l.freed_output}, {"residual", l.residual}});
            j["causality"] = levels;
            bool cp_ok = true;
            if (p.source()) {
                const auto cp = pt::cp_divisibility_check(p);
                Json maps = Json::array();
                for (const auto& m : cp.maps)
                    maps.push_back({{"from", m.from_output}, {"to", m.to_input}, {"residual", m.residual}});
                j["cp_divisibility"] = {{"maps", maps}, {"composition_residual", cp.composition_residual}, {"ok", cp.ok}};
                cp_ok = cp.ok;
            }
            const bool ok = v.ok && c.ok && cp_ok;
            j["ok"] = ok;
            emit(dump(j), "");
            if (!ok) return kExitValidation;
        } else if (*states_emit) {
            const pt::Matrix m = pt::catalog::state_by_name(state_name);
            if (format == "json") {
                Json j;
                j["name"] = state_name;
                j["dims"] = state_name == "lambda" ? pt::catalog::kLambdaDims : pt::catalog::kOmegaDims;
                j["matrix"] = pt::io::matrix_to_json(m);
                emit(dump(j), out_path);
            } else {
                std::ostringstream os;
                os.precision(17);
                os << "row,col,re,im\n";
                for (Eigen::Index r = 0; r < m.rows(); ++r)
                    for (Eigen::Index c = 0; c < m.cols(); ++c)
                        os << r << ',' << c << ',' << m(r, c).real() << ',' << m(r, c).imag() << '\n';
                emit(os.str(), out_path);
            }
        } else if (*inst_show) {
            const pt::Instrument inst = load_instrument(instrument_spec);
            Json j = pt::io::instrument_to_json(inst);
            Json labels = Json::array();
            for (const auto& e : inst.elements()) labels.push_back(e.label);
            j["name"] = inst.name();
            j["labels"] = labels;
            emit(dump(j), "");
        } else if (*inst_validate) {
            const pt::Instrument inst = load_instrument(instrument_spec);
            const auto v = pt::validate(inst);
            Json j;
            j["name"] = inst.name();
            j["min_eigenvalues"] = v.min_eigenvalues;
            j["max_eigenvalues"] = v.max_eigenvalues;
            j["completeness_residual"] = v.completeness_residual;
            j["span_rank"] = pt::span_rank(inst);
            j["ok"] = v.ok;
            emit(dump(j), "");
            if (!v.ok) return kExitValidation;
        } else if (*inst_dual) {
            const pt::Instrument inst = load_instrument(instrument_spec);
            const pt::DualFrame d = pt::dual_frame(inst);
            Json duals = Json::array();
            for (const auto& m : d.duals()) duals.push_back(pt::io::matrix_to_json(m));
            Json j;
            j["name"] = inst.name();
            j["gram"] = pt::io::matrix_to_json(d.gram());
            j["condition_number"] = d.condition_number();
            j["biorthogonality_error"] = d.biorthogonality_error(inst);
            j["duals"] = duals;
            emit(dump(j), "");
        } else if (*mem_strength) {
            const pt::ProcessTensor p = load_process(process_spec);
            const pt::Instrument inst = load_instrument(instrument_spec);
            const auto m = pt::memory::memory_strength(p, inst, party);
            if (as_json) {
                emit(dump(memory_report_json(m, inst)), "");
            } else {
                std::printf("%-8s %-14s %-14s\n", "event", "probability", "mutual_info");
                for (std::size_t x = 0; x < m.events.size(); ++x)
                    std::printf("%-8s %-14.10f %-14.10f\n", inst.elements()[x].label.c_str(), m.events[x].probability,
                                m.events[x].mutual_information);
                std::printf("uniform %.10f  weighted %.10f  max %.10f\n", m.aggregate_uniform, m.aggregate_weighted,
                            m.max_event);
            }
        } else if (*mem_nm) {
            const pt::ProcessTensor p = load_process(process_spec);
            const double n = pt::memory::non_markovianity(p);
            Json j;
            j["non_markovianity"] = n;
            j["confusion_probability"] = pt::memory::confusion_probability(1, n);
            j["process_cmi"] = pt::memory::process_cmi(p);
            if (p.source()) j["state_cmi"] = pt::memory::quantum_cmi(p.source()->gamma, p.source()->input_dims);
            emit(dump(j), "");
        } else if (*mem_survey) {
            const pt::ProcessTensor p = load_process(process_spec);
            const auto s = pt::memory::projective_survey(p, cutoff, samples, seed, parse_measure(measure), threads);
            Json j;
            j["measure"] = measure;
            j["cutoff"] = cutoff;
            j["seed"] = seed;
            j["samples"] = s.samples;
            j["below_cutoff"] = s.below_cutoff;
            j["fraction"] = s.fraction;
            j["standard_error"] = s.standard_error;
            emit(dump(j), "");
        } else if (*rec_build) {
            const pt::ProcessTensor p = load_process(process_spec);
            const auto r = pt::recovery::recover(p, load_instrument(instrument_spec));
            Json j;
            j["instrument"] = r.instrument.name();
            j["input_dims"] = r.input_dims;
            j["output_dims"] = r.output_dims;
            j["probabilities"] = r.probabilities;
            j["state"] = pt::io::matrix_to_json(r.state);
            if (p.source()) j["fidelity_to_state"] = pt::linalg::fidelity(r.state, p.source()->gamma);
            emit(dump(j), out_path);
        } else if (*rec_scan) {
            pt::ProcessTensor p = load_process(process_spec);
            const pt::Instrument inst = load_instrument(instrument_spec);
            pt::ProcessTensor source = p;
            if (depolarizing > 0.0 || misalignment > 0.0) {
                if (!p.source()) throw pt::ValidationError("noisy replay needs a common-cause process");
                const auto& src = *p.source();
                const pt::recovery::NoiseModel noise{depolarizing, misalignment};
                p = pt::build_common_cause(pt::recovery::noisy_replay(src.gamma, src.input_dims, noise, pt::derive_seed(seed, 1)),
                                           src.input_dims, src.output_dims);
                source = pt::build_common_cause(
                    pt::recovery::noisy_replay(src.gamma, src.input_dims, noise, pt::derive_seed(seed, 2)),
                    src.input_dims, src.output_dims);
            }
            const auto r = pt::recovery::recover(source, inst);
            constexpr double kHalfPi = 1.5707963267948966;
            constexpr double kTwoPi = 6.283185307179586;
            const pt::recovery::ScanGrid g{{0.0, kHalfPi, grid}, {0.0, kTwoPi, phase_steps}, {0.0, kHalfPi, grid},
                                           {0.0, kTwoPi, phase_steps}};
            const auto scan = pt::recovery::deviation_scan(p, r, g, parse_convention(convention), threads);
            std::ostringstream os;
            scan.write_csv(os);
            emit(os.str(), out_path);
            if (!out_path.empty() && out_path != "-") {
                const auto& m = scan.points[scan.argmax];
                Json j;
                j["points"] = scan.points.size();
                j["max_abs_diff"] = scan.max_abs_diff;
                j["argmax"] = {{"theta1", m.theta1}, {"phi", m.phi}, {"theta2", m.theta2}, {"psi", m.psi}};
                emit(dump(j), "");
            }
        } else if (*walk_verify) {
            const pt::walk::WalkCircuit circuit = load_circuit(circuit_spec);
            const pt::Instrument target = load_instrument(target_spec.empty() ? circuit_spec : target_spec);
            const pt::Instrument got = pt::walk::extract_povm(circuit);
            double err = got.size() == target.size() ? 0.0 : 1.0;
            Json elements = Json::array();
            for (std::size_t x = 0; x < got.size(); ++x) {
                elements.push_back(pt::io::matrix_to_json(got[x]));
                if (x < target.size()) err = std::max(err, (got[x] - target[x]).cwiseAbs().maxCoeff());
            }
            Json j;
            j["circuit"] = circuit.name;
            j["target"] = target.name();
            j["elements"] = elements;
            j["max_error"] = err;
            j["pass"] = err <= 1e-8;
            emit(dump(j), "");
            if (err > 1e-8) throw ToleranceFailure{};
        } else if (*walk_emit) {
            emit(dump(pt::walk::circuit_to_json(pt::walk::circuit_by_name(circuit_spec))), out_path);
        } else if (*tomo_sim) {
            const LoadedState s = load_state(state_spec, dims_opt);
            std::ostringstream os;
            pt::tomo::simulate_counts(s.matrix, s.dims, shots, seed).write_csv(os);
            emit(os.str(), out_path);
        } else if (*tomo_rec || *tomo_boot) {
            std::vector<int> dims{2, 2, 2};
            std::optional<LoadedState> reference;
            if (!state_spec.empty()) {
                reference = load_state(state_spec, dims_opt);
                dims = reference->dims;
            }
            if (!dims_opt.empty()) dims = parse_dims(dims_opt);
            std::ifstream in(counts_path);
            if (!in) throw pt::ValidationError("cannot open " + counts_path);
            const pt::tomo::CountsTable counts = pt::tomo::CountsTable::read_csv(in, dims);
            Json j;
            j["dims"] = dims;
            j["total_shots"] = counts.total_shots();
            if (*tomo_rec) {
                const pt::Matrix rho = pt::tomo::reconstruct(counts);
                if (reference) j["fidelity"] = pt::linalg::fidelity(rho, reference->matrix);
                if (dims.size() == 3) j["non_markovianity"] = pt::memory::total_correlation(rho, dims);
                j["matrix"] = pt::io::matrix_to_json(rho);
            } else {
                const auto b = pt::tomo::bootstrap(counts, resamples, pt::tomo::statistic_by_name(statistic, dims), seed,
                                                   threads);
                j["statistic"] = statistic;
                j["resamples"] = resamples;
                j["seed"] = seed;
                j["mean"] = b.mean;
                j["standard_error"] = b.standard_error;
            }
            emit(dump(j), out_path);
        } else if (*preset) {
            pt::bench::RunConfig cfg;
            if (!config_path.empty()) cfg = pt::bench::config_from_json(pt::io::read_json_file(config_path));
            if (!preset_name.empty()) cfg.preset = preset_name;
            if (preset->count("--seed") > 0) cfg.seed = preset_seed;
            if (!out_path.empty()) cfg.output = out_path;
            if (!preset_format.empty()) cfg.format = preset_format;
            if (threads > 0) cfg.threads = threads;
            const pt::bench::Report r = pt::bench::run_preset(cfg);
            emit(cfg.format == "csv" ? r.csv : dump(r.body), cfg.output);
            if (r.tolerance_failure) return kExitTolerance;
        }
    } catch (const ToleranceFailure&) {
        return kExitTolerance;
    } catch (const pt::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
