#include "reports.hpp"

#include <cmath>

#include "mfap/function_spec.hpp"

namespace mfap::cli {

using nlohmann::json;

namespace {

std::string num(double v) { return std::isfinite(v) ? format_double(v) : std::string(std::isnan(v) ? "nan" : "inf"); }
std::string num(std::uint64_t v) { return std::to_string(v); }

// CSV cells are numbers or identifiers; quote anything with a separator.
std::string cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

}  // namespace

std::string to_csv(const Table& table) {
    std::string out;
    const auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cell(cells[i]);
        out += "\n";
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
    return out;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json character_json(const DirichletCharacter& chi) {
    return {{"label", chi.to_string()}, {"modulus", chi.modulus()}, {"index", chi.index()},
            {"conductor", chi.conductor()}, {"order", chi.order()}, {"real", chi.is_real()}};
}

json result_json(const ConstantValue& c) {
    return {{"name", c.name}, {"value", c.value}, {"method", c.method}, {"estimated_error", c.estimated_error}};
}

json result_json(const ExceptionalReport& r, const std::vector<RepulsionEntry>& repulsion) {
    json spectrum = json::array();
    for (std::size_t j = 0; j < r.spectrum.size(); ++j) {
        const auto& e = r.spectrum[j];
        spectrum.push_back({{"j", j + 1}, {"character", character_json(e.character)}, {"t", e.t},
                            {"squared_distance", e.squared_distance}, {"repulsion_reference", repulsion[j].reference}});
    }
    return {{"psi", character_json(r.psi)},
            {"r", r.r},
            {"t", r.t},
            {"min_squared_distance", r.min_squared_distance},
            {"candidates", r.candidates},
            {"grid", {{"spacing", r.grid.spacing}, {"points", r.grid.points}, {"refine_tolerance", r.grid.refine_tolerance}}},
            {"spectrum", spectrum}};
}

json result_json(const Theorem1Report& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"a", row.a}, {"F", complex_json(row.F)}, {"residual", complex_json(row.residual)},
                        {"main_term", row.main_term ? complex_json(*row.main_term) : json(nullptr)}});
    return {{"exceptional", {{"psi", character_json(r.exceptional.psi)}, {"r", r.exceptional.r}, {"t", r.exceptional.t},
                             {"min_squared_distance", r.exceptional.min_squared_distance}}},
            {"chi", character_json(r.chi)},
            {"r_divides_q", r.r_divides_q},
            {"rows", rows},
            {"max_normalized_residual", r.max_normalized_residual},
            {"error_ref_branch_a", r.error_ref_branch_a},
            {"error_ref_branch_b", r.error_ref_branch_b}};
}

json result_json(const HalaszBound& h) {
    return {{"T", h.T}, {"t", h.t}, {"squared_distance", h.squared_distance}, {"bound", h.bound},
            {"measured_mean", h.measured_mean}};
}

json result_json(const EulerProductValue& e) {
    return {{"t", e.t}, {"truncation", e.truncation}, {"product", complex_json(e.product)},
            {"prediction", complex_json(e.prediction)}, {"tail_log_bound", e.tail_log_bound}};
}

json result_json(const BadModuliReport& r, bool verbose) {
    json out = {{"terms", r.terms}, {"threshold", r.threshold}, {"eta_below_hypothesis", r.eta_below_hypothesis},
                {"bad", r.bad}, {"bad_weight", r.bad_weight}, {"weight_bound", r.weight_bound}};
    if (verbose) {
        json masses = json::array();
        for (const auto& m : r.masses) masses.push_back({{"r", m.r}, {"mass", m.mass}});
        out["masses"] = masses;
    }
    return out;
}

json result_json(const DefectReport& r, bool verbose) {
    json out = {{"units", r.units}, {"max_defect", r.max_defect}, {"normalizer", r.normalizer},
                {"normalized_max_defect", r.normalized_max_defect}, {"reference_scale", r.reference_scale}};
    if (verbose) out["defect"] = r.defect;
    return out;
}

json result_json(const LegendreExperiment& e, bool verbose) {
    json out = {{"a_is_square", e.a_is_square}, {"infimum", e.infimum}, {"argmin_p", e.argmin_p},
                {"primes_scanned", e.entries.size()}};
    if (verbose) {
        json entries = json::array();
        for (const auto& en : e.entries)
            entries.push_back({{"p", en.p}, {"value", en.value}, {"running_infimum", en.running_infimum}});
        out["entries"] = entries;
    }
    return out;
}

json result_json(const RecoveryResult& r) {
    return {{"chi", character_json(r.chi)}, {"epsilon", r.epsilon}, {"fourier_mass", r.fourier_mass},
            {"bound", r.bound}, {"measured", r.measured}};
}

Table table_of(const ConstantValue& c) {
    return {{"name", "value", "method", "estimated_error"}, {{c.name, num(c.value), c.method, num(c.estimated_error)}}};
}

Table table_of(const ExceptionalReport& r, const std::vector<RepulsionEntry>& repulsion) {
    Table t{{"j", "character", "conductor", "t", "squared_distance", "repulsion_reference"}, {}};
    for (std::size_t j = 0; j < r.spectrum.size(); ++j) {
        const auto& e = r.spectrum[j];
        t.rows.push_back({num(std::uint64_t{j + 1}), e.character.to_string(), num(std::uint64_t{e.character.conductor()}),
                          num(e.t), num(e.squared_distance), num(repulsion[j].reference)});
    }
    return t;
}

Table table_of(const Theorem1Report& r) {
    Table t{{"a", "Re F", "Im F", "residual", "main_term", "error_ref_brancha", "error_ref_branchb"}, {}};
    for (const auto& row : r.rows)
        t.rows.push_back({num(std::uint64_t{row.a}), num(row.F.real()), num(row.F.imag()), format_complex(row.residual),
                          row.main_term ? format_complex(*row.main_term) : std::string(), num(r.error_ref_branch_a),
                          num(r.error_ref_branch_b)});
    return t;
}

Table table_of(const HalaszBound& h) {
    return {{"T", "t", "squared_distance", "bound", "measured_mean"},
            {{num(h.T), num(h.t), num(h.squared_distance), num(h.bound), num(h.measured_mean)}}};
}

Table table_of(const EulerProductValue& e) {
    return {{"t", "truncation", "product", "prediction", "tail_log_bound"},
            {{num(e.t), num(e.truncation), format_complex(e.product), format_complex(e.prediction),
              num(e.tail_log_bound)}}};
}

Table table_of(const BadModuliReport& r) {
    Table t{{"r", "mass", "bad"}, {}};
    for (const auto& m : r.masses)
        t.rows.push_back({num(std::uint64_t{m.r}), num(m.mass), m.mass >= r.threshold ? "1" : "0"});
    return t;
}

Table table_of(const DefectReport& r) {
    Table t{{"a", "b", "defect"}, {}};
    for (std::size_t i = 0; i < r.units.size(); ++i)
        for (std::size_t j = 0; j < r.units.size(); ++j)
            t.rows.push_back({num(std::uint64_t{r.units[i]}), num(std::uint64_t{r.units[j]}), num(r.defect[i][j])});
    return t;
}

Table table_of(const LegendreExperiment& e) {
    Table t{{"p", "value", "running_infimum"}, {}};
    for (const auto& en : e.entries) t.rows.push_back({num(en.p), num(en.value), num(en.running_infimum)});
    return t;
}

Table table_of(const RecoveryResult& r) {
    return {{"chi", "epsilon", "fourier_mass", "bound", "measured"},
            {{r.chi.to_string(), num(r.epsilon), num(r.fourier_mass), num(r.bound), num(r.measured)}}};
}

}  // namespace mfap::cli
