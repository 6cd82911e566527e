#include "ltvnorm/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ltvnorm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::invalid_argument(path + ": " + what);
}

Matrix parse_matrix(const json& j, const std::string& path) {
    if (!j.is_array()) {
        fail(path, "expected an array of rows");
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& row = j[i];
        if (!row.is_array()) {
            fail(path + "[" + std::to_string(i) + "]", "expected an array of numbers");
        }
        std::vector<double> values;
        values.reserve(row.size());
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (!row[k].is_number()) {
                fail(path + "[" + std::to_string(i) + "][" + std::to_string(k) + "]",
                     "expected a number");
            }
            values.push_back(row[k].get<double>());
        }
        rows.push_back(std::move(values));
    }
    try {
        return Matrix::from_rows(rows);
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

TvMatrixFn parse_source(const json& j, const std::string& path) {
    if (!j.is_object()) {
        fail(path, "expected an object with a \"constant\" or \"gridded\" key");
    }
    if (j.contains("constant")) {
        return TvMatrixFn::constant(parse_matrix(j["constant"], path + ".constant"));
    }
    if (j.contains("gridded")) {
        const json& g = j["gridded"];
        if (!g.is_object() || !g.contains("times") || !g.contains("samples")) {
            fail(path + ".gridded", "expected \"times\" and \"samples\"");
        }
        const json& jt = g["times"];
        if (!jt.is_array()) {
            fail(path + ".gridded.times", "expected an array of numbers");
        }
        std::vector<double> times;
        times.reserve(jt.size());
        for (std::size_t i = 0; i < jt.size(); ++i) {
            if (!jt[i].is_number()) {
                fail(path + ".gridded.times[" + std::to_string(i) + "]", "expected a number");
            }
            times.push_back(jt[i].get<double>());
        }
        const json& js = g["samples"];
        if (!js.is_array()) {
            fail(path + ".gridded.samples", "expected an array of matrices");
        }
        std::vector<Matrix> samples;
        samples.reserve(js.size());
        for (std::size_t i = 0; i < js.size(); ++i) {
            samples.push_back(
                parse_matrix(js[i], path + ".gridded.samples[" + std::to_string(i) + "]"));
        }
        return TvMatrixFn::gridded(std::move(times), std::move(samples));
    }
    fail(path, "expected a \"constant\" or \"gridded\" key");
}

std::size_t parse_dim(const json& dims, const char* key) {
    if (!dims.contains(key)) {
        fail(std::string("dims.") + key, "missing");
    }
    const json& v = dims[key];
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        fail(std::string("dims.") + key, "expected a nonnegative integer");
    }
    return static_cast<std::size_t>(v.get<long long>());
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

LoadedSpec parse_system_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("spec: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        fail("spec", "expected a JSON object");
    }

    LoadedSpec spec;
    if (!j.contains("horizon") || !j["horizon"].is_number()) {
        fail("horizon", "expected a number");
    }
    spec.system.horizon = j["horizon"].get<double>();

    if (!j.contains("dims") || !j["dims"].is_object()) {
        fail("dims", "expected an object with n_x, n_d, n_I, n_E");
    }
    const json& dims = j["dims"];
    spec.system.state_dim = parse_dim(dims, "n_x");
    spec.system.input_dim = parse_dim(dims, "n_d");
    spec.system.l2_dim = parse_dim(dims, "n_I");
    spec.system.terminal_dim = parse_dim(dims, "n_E");

    if (!j.contains("matrices") || !j["matrices"].is_object()) {
        fail("matrices", "expected an object");
    }
    const json& mats = j["matrices"];
    const auto source_or_absent = [&mats](const char* key, std::size_t rows,
                                          std::size_t cols) {
        if (mats.contains(key)) {
            return parse_source(mats[key], std::string("matrices.") + key);
        }
        return TvMatrixFn::constant(Matrix(rows, cols));
    };
    if (!mats.contains("A")) {
        fail("matrices.A", "missing");
    }
    if (!mats.contains("B")) {
        fail("matrices.B", "missing");
    }
    spec.system.A = parse_source(mats["A"], "matrices.A");
    spec.system.B = parse_source(mats["B"], "matrices.B");
    // Omitted running / terminal output blocks mean that channel is absent.
    spec.system.C_I = source_or_absent("C_I", spec.system.l2_dim, spec.system.state_dim);
    spec.system.D_I = source_or_absent("D_I", spec.system.l2_dim, spec.system.input_dim);
    spec.system.C_E = source_or_absent("C_E", spec.system.terminal_dim, spec.system.state_dim);

    if (j.contains("solver")) {
        const json& solver = j["solver"];
        if (!solver.is_object()) {
            fail("solver", "expected an object");
        }
        if (solver.contains("steps")) {
            if (!solver["steps"].is_number_integer() || solver["steps"].get<long long>() < 2) {
                fail("solver.steps", "expected an integer >= 2");
            }
            spec.options.steps = solver["steps"].get<int>();
        }
        if (solver.contains("divergence_threshold")) {
            if (!solver["divergence_threshold"].is_number() ||
                !(solver["divergence_threshold"].get<double>() > 0.0)) {
                fail("solver.divergence_threshold", "expected a positive number");
            }
            spec.options.divergence_threshold = solver["divergence_threshold"].get<double>();
        }
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0) {
            fail("seed", "expected a nonnegative integer");
        }
        spec.options.seed = j["seed"].get<std::uint64_t>();
    }
    return spec;
}

LoadedSpec load_system_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open spec file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_system_spec(buffer.str());
}

std::string report_to_json(const AnalysisReport& report) {
    json j;
    j["algorithm"] = report.algorithm;
    j["tolerance"] = report.tolerance;
    if (report.gamma_lb.has_value()) {
        j["gamma_lb"] = *report.gamma_lb;
    }
    if (report.gamma_ub.has_value()) {
        j["gamma_ub"] = *report.gamma_ub;
    }
    if (report.iterations.has_value()) {
        j["iterations"] = *report.iterations;
    }
    if (report.rde_solves.has_value()) {
        j["rde_solves"] = *report.rde_solves;
    }
    if (report.power_iterations.has_value()) {
        j["power_iterations"] = *report.power_iterations;
    }
    j["wall_time_s"] = report.wall_time_s;
    j["termination"] = report.termination;
    if (report.disturbance_csv.has_value()) {
        j["disturbance_csv"] = *report.disturbance_csv;
    }
    return j.dump(2) + "\n";
}

void write_signal_csv(const std::string& path, const Signal& sig) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    out << "t";
    for (std::size_t i = 0; i < sig.dim; ++i) {
        out << ",d" << (i + 1);
    }
    out << "\n";
    for (std::size_t k = 0; k < sig.times.size(); ++k) {
        out << format_double(sig.times[k]);
        for (std::size_t i = 0; i < sig.dim; ++i) {
            out << "," << format_double(sig.samples[k][i]);
        }
        out << "\n";
    }
}

Signal read_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open signal file: " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument(path + ": empty file");
    }
    Signal sig;
    std::size_t n_cols = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::vector<double> values;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                values.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                            ": not a number: " + cell);
            }
        }
        if (values.empty()) {
            continue;
        }
        if (n_cols == 0) {
            n_cols = values.size();
        } else if (values.size() != n_cols) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": inconsistent column count");
        }
        sig.times.push_back(values.front());
        sig.samples.emplace_back(values.begin() + 1, values.end());
    }
    if (sig.times.size() < 2) {
        throw std::invalid_argument(path + ": need at least two sample rows");
    }
    sig.dim = n_cols - 1;
    return sig;
}

void write_gain_profile_csv(const std::string& path, const GramianTrace& trace,
                            const std::vector<std::size_t>& indices, double scale) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open output file: " + path);
    }
    const std::size_t n_e = trace.v1.empty() ? 0 : trace.v1.front().size();
    out << "tau,gain";
    for (std::size_t i = 0; i < n_e; ++i) {
        out << ",v1_" << (i + 1);
    }
    out << "\n";
    for (std::size_t idx : indices) {
        out << format_double(trace.times.at(idx));
        out << "," << format_double(scale * std::sqrt(std::max(0.0, trace.lambda1.at(idx))));
        for (std::size_t i = 0; i < n_e; ++i) {
            out << "," << format_double(trace.v1.at(idx)[i]);
        }
        out << "\n";
    }
}

}  // namespace ltvnorm
