#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfap/characters.hpp"
#include "mfap/constants.hpp"
#include "mfap/meanvalues.hpp"
#include "mfap/nearchar.hpp"
#include "mfap/pretension.hpp"
#include "mfap/sieve_experiments.hpp"

namespace mfap::cli {

// A flat table for CSV output.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
std::string to_csv(const Table& table);

nlohmann::json complex_json(std::complex<double> z);
nlohmann::json character_json(const DirichletCharacter& chi);

// JSON result objects; `verbose` adds the per-item detail lists.
nlohmann::json result_json(const ConstantValue& c);
nlohmann::json result_json(const ExceptionalReport& r, const std::vector<RepulsionEntry>& repulsion);
nlohmann::json result_json(const Theorem1Report& r);
nlohmann::json result_json(const HalaszBound& h);
nlohmann::json result_json(const EulerProductValue& e);
nlohmann::json result_json(const BadModuliReport& r, bool verbose);
nlohmann::json result_json(const DefectReport& r, bool verbose);
nlohmann::json result_json(const LegendreExperiment& e, bool verbose);
nlohmann::json result_json(const RecoveryResult& r);

Table table_of(const ConstantValue& c);
Table table_of(const ExceptionalReport& r, const std::vector<RepulsionEntry>& repulsion);
// columns: a, Re F, Im F, residual, main_term, error_ref_brancha, error_ref_branchb
Table table_of(const Theorem1Report& r);
Table table_of(const HalaszBound& h);
Table table_of(const EulerProductValue& e);
Table table_of(const BadModuliReport& r);
Table table_of(const DefectReport& r);
Table table_of(const LegendreExperiment& e);
Table table_of(const RecoveryResult& r);

}  // namespace mfap::cli
