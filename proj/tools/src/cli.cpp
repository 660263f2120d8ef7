#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mfap/constants.hpp"
#include "mfap/errors.hpp"
#include "mfap/nearchar.hpp"
#include "mfap/parallel.hpp"
#include "mfap/version.hpp"
#include "reports.hpp"
#include "schema.hpp"

namespace mfap::cli {

using nlohmann::json;

namespace {

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    unsigned threads = 0;
    unsigned long long seed = kDefaultSeed;
    std::string out;
    std::string format = "json";
    bool verbose = false;

    std::string f;
    std::uint64_t x = 0;
    std::uint32_t q = 1;
    std::uint64_t a = 1;
    std::uint32_t Q = 10;
    std::optional<double> A;
    double T = 1;
    double eta = 0;
    double t = 0;
    std::optional<std::uint64_t> P;
    std::size_t depth = 5;
    std::uint64_t p_limit = 0;
    std::uint64_t n = 0;
    std::string psi;
    std::string chi;
    std::string g_file;
    std::string name = "delta1";
    double tol = 1e-12;
    std::string m;
};

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Parameter checks that must pass before any sieving starts.
void check_x(std::uint64_t x) {
    require(x >= 2 && x <= PrimeTable::kMaxLimit, "x must lie in [2, 1e8], got " + std::to_string(x));
}
void check_modulus(std::uint32_t q, const char* what) {
    require(q >= 1 && q <= DirichletCharacter::kMaxModulus, std::string(what) + " must lie in [1, 10000]");
}
void check_unit(std::uint64_t a, std::uint32_t q) {
    require(std::gcd(a, std::uint64_t{q}) == 1, "a = " + std::to_string(a) + " is not coprime to q = " + std::to_string(q));
}

std::vector<std::complex<double>> read_g_file(const std::string& path, std::uint32_t q) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read g-file '" + path + "'");
    std::vector<std::complex<double>> g(q);
    std::vector<bool> seen(q, false);
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto where = path + ":" + std::to_string(lineno);
        const auto colon = line.find(':');
        const auto comma = line.find(',', colon == std::string::npos ? 0 : colon);
        if (colon == std::string::npos || comma == std::string::npos) throw ParseError(where + ": expected 'a: re,im'");
        std::uint64_t a = 0;
        double re = 0, im = 0;
        try {
            std::size_t used = 0;
            a = std::stoull(line.substr(0, colon), &used);
            re = std::stod(line.substr(colon + 1, comma - colon - 1));
            im = std::stod(line.substr(comma + 1), &used);
            if (line.substr(comma + 1 + used).find_first_not_of(" \t\r") != std::string::npos)
                throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
            throw ParseError(where + ": expected 'a: re,im'");
        }
        if (a >= q || std::gcd(a, std::uint64_t{q}) != 1)
            throw ParseError(where + ": " + std::to_string(a) + " is not a unit residue mod " + std::to_string(q));
        if (seen[a]) throw ParseError(where + ": duplicate entry for " + std::to_string(a));
        seen[a] = true;
        g[a] = {re, im};
    }
    for (auto a : unit_group(q)->units())
        if (!seen[a]) throw ParseError(path + ": no value for unit " + std::to_string(a));
    return g;
}

struct Outcome {
    std::string kind;
    json config;
    json result;
    Table table;
};

Outcome run_constants(const Options& o) {
    require(o.tol >= 1e-12, "--tol must be >= 1e-12");
    ConstantValue c;
    if (o.name == "delta1") {
        c = delta1(o.tol);
    } else if (o.name == "delta0") {
        c = delta0();
    } else if (o.name == "lemma33") {
        if (o.m.empty()) {
            const auto best = lemma33_minimum(1'000'000);
            c = {"lemma33_minimum", best.value,
                 best.argmin ? "minimum over 2 <= m <= 1e6 and the continuous case, attained at m = " +
                                   std::to_string(*best.argmin)
                             : std::string("minimum attained by the continuous case"),
                 0.0};
        } else if (o.m == "continuous") {
            c = {"lemma33_continuous", lemma33_constant_continuous(), "1 - 2/pi", 0.0};
        } else {
            std::uint64_t m = 0;
            try {
                std::size_t used = 0;
                m = std::stoull(o.m, &used);
                if (used != o.m.size()) throw std::invalid_argument("m");
            } catch (const std::exception&) {
                throw ParseError("--m must be an integer or 'continuous'");
            }
            c = {"lemma33(" + o.m + ")", lemma33_constant(m), "closed form", 0.0};
        }
    } else {
        throw ParseError("unknown constant '" + o.name + "' (delta1, delta0, lemma33)");
    }
    json cfg = {{"name", o.name}, {"tol", o.tol}};
    if (!o.m.empty()) cfg["m"] = o.m;
    return {"constants", cfg, result_json(c), table_of(c)};
}

Outcome run_pretension_find(const Options& o, std::ostream& err) {
    const auto f = parse_function_spec(o.f);
    check_x(o.x);
    check_modulus(o.Q, "Q");
    const double A = o.A.value_or(std::pow(std::log(static_cast<double>(o.x)), 2));
    require(A > 0, "A must be positive");
    require(o.depth >= 1, "--depth must be >= 1");
    if (!o.A) err << "warning: --A not given, using (log x)^2 = " << format_double(A) << "; the t-grid is large\n";
    const PrimeTable table(o.x);
    const auto rep = find_exceptional(f, o.x, o.Q, A, o.depth, table);
    const auto rep_spectrum = repulsion_spectrum(rep, o.x);
    json cfg = {{"f", f.to_string()}, {"x", o.x}, {"Q", o.Q}, {"A", A}, {"depth", o.depth}};
    return {"pretension.find", cfg, result_json(rep, rep_spectrum), table_of(rep, rep_spectrum)};
}

Outcome run_meanvalues_report(const Options& o) {
    const auto f = parse_function_spec(o.f);
    check_x(o.x);
    check_modulus(o.Q, "Q");
    require(o.q >= 1 && o.q <= o.Q, "need 1 <= q <= Q");
    require(o.q <= o.x, "need q <= x");
    const double A = o.A.value_or(2.0);
    require(A > 0, "A must be positive");
    const PrimeTable table(o.x);
    const auto rep = theorem1_report(f, o.x, o.q, o.Q, A, table);
    json cfg = {{"f", f.to_string()}, {"x", o.x}, {"q", o.q}, {"Q", o.Q}, {"A", A}};
    return {"meanvalues.report", cfg, result_json(rep), table_of(rep)};
}

Outcome run_meanvalues_halasz(const Options& o) {
    const auto f = parse_function_spec(o.f);
    check_x(o.x);
    require(o.T >= 1, "T must be >= 1");
    const PrimeTable table(o.x);
    const auto h = halasz_bound(f, o.x, o.T, table);
    json cfg = {{"f", f.to_string()}, {"x", o.x}, {"T", o.T}};
    return {"meanvalues.halasz", cfg, result_json(h), table_of(h)};
}

Outcome run_meanvalues_euler(const Options& o) {
    const auto f = parse_function_spec(o.f);
    check_x(o.x);
    check_modulus(o.q, "q");
    std::optional<DirichletCharacter> psi;
    if (!o.psi.empty()) psi = parse_character(o.psi);
    if (o.P) require(*o.P >= 1 && *o.P <= o.x, "need 1 <= P <= x");
    const PrimeTable table(o.x);
    const auto e = euler_product_mean(f, psi, o.t, o.q, o.x, table, o.P);
    json cfg = {{"f", f.to_string()}, {"x", o.x}, {"q", o.q}, {"t", o.t}};
    cfg["psi"] = psi ? json(psi->to_string()) : json(nullptr);
    cfg["P"] = o.P ? json(*o.P) : json(nullptr);
    return {"meanvalues.euler", cfg, result_json(e), table_of(e)};
}

Outcome run_sieve_bad_moduli(const Options& o, std::ostream& err) {
    const auto f = parse_function_spec(o.f);
    check_x(o.x);
    require(o.q >= 1 && o.q <= o.x, "need 1 <= q <= x");
    check_unit(o.a, o.q);
    require(o.eta > 0, "eta must be positive");
    require(isqrt(o.x / o.q) <= DirichletCharacter::kMaxModulus, "sqrt(x/q) must not exceed 10000");
    require(o.x + o.q <= PrimeTable::kMaxLimit, "x + q must not exceed 1e8");
    if (o.eta <= 1.0 / std::sqrt(std::log(static_cast<double>(o.x))))
        err << "warning: eta <= 1/sqrt(log x); the large sieve bound is still checked\n";
    const PrimeTable table(o.x + o.q);
    const auto rep = bad_moduli(f, o.x, o.q, o.a, o.eta, table);
    json cfg = {{"f", f.to_string()}, {"x", o.x}, {"q", o.q}, {"a", o.a}, {"eta", o.eta}};
    return {"sieve.bad-moduli", cfg, result_json(rep, o.verbose), table_of(rep)};
}

Outcome run_sieve_defect(const Options& o) {
    const auto f = parse_function_spec(o.f);
    check_x(o.x);
    check_modulus(o.q, "q");
    require(o.q <= o.x, "need q <= x");
    const PrimeTable table(o.x);
    const auto rep = multiplicativity_defect(f, o.x, o.q, table);
    json cfg = {{"f", f.to_string()}, {"x", o.x}, {"q", o.q}};
    return {"sieve.defect", cfg, result_json(rep, o.verbose), table_of(rep)};
}

Outcome run_sieve_legendre(const Options& o) {
    check_x(o.x);
    check_modulus(o.q, "q");
    check_unit(o.a, o.q);
    require(o.p_limit >= 3 && o.p_limit <= PrimeTable::kMaxLimit, "--p-limit must lie in [3, 1e8]");
    const PrimeTable table(std::max(o.x, o.p_limit));
    const auto e = legendre_progression_experiment(o.q, o.a, o.x, o.p_limit, table);
    json cfg = {{"q", o.q}, {"a", o.a}, {"x", o.x}, {"p_limit", o.p_limit}};
    return {"sieve.legendre", cfg, result_json(e, o.verbose), table_of(e)};
}

Outcome run_nearchar_recover(const Options& o) {
    check_modulus(o.q, "q");
    const auto values = read_g_file(o.g_file, o.q);
    const auto r = nearest_character(ApproxHomomorphism(o.q, values));
    json g = json::object();
    for (auto a : unit_group(o.q)->units()) g[std::to_string(a)] = complex_json(values[a]);
    json cfg = {{"q", o.q}, {"g_file", o.g_file}, {"g", g}};
    return {"nearchar.recover", cfg, result_json(r), table_of(r)};
}

Outcome run_chars_list(const Options& o) {
    check_modulus(o.q, "q");
    json list = json::array();
    Table t{{"label", "conductor", "order", "real"}, {}};
    for (const auto& chi : enumerate_characters(o.q)) {
        list.push_back(character_json(chi));
        t.rows.push_back({chi.to_string(), std::to_string(chi.conductor()), std::to_string(chi.order()),
                          chi.is_real() ? "1" : "0"});
    }
    return {"chars.list", {{"q", o.q}}, {{"count", list.size()}, {"characters", list}}, t};
}

Outcome run_chars_eval(const Options& o) {
    const auto chi = parse_character(o.chi);
    const auto v = chi.value(o.n);
    const json angle = v.nonzero ? json::array({v.numerator, v.denominator}) : json(nullptr);
    const auto z = v.to_complex();
    Table t{{"label", "n", "re", "im"}, {{chi.to_string(), std::to_string(o.n), format_double(z.real()),
                                          format_double(z.imag())}}};
    return {"chars.eval",
            {{"chi", chi.to_string()}, {"n", o.n}},
            {{"character", character_json(chi)}, {"n", o.n}, {"value", complex_json(z)}, {"angle", angle}},
            t};
}

Outcome run_chars_conductor(const Options& o) {
    const auto chi = parse_character(o.chi);
    const auto psi = primitive_part(chi);
    Table t{{"label", "conductor", "primitive_part"}, {{chi.to_string(), std::to_string(chi.conductor()), psi.to_string()}}};
    return {"chars.conductor",
            {{"chi", chi.to_string()}},
            {{"character", character_json(chi)}, {"conductor", chi.conductor()}, {"primitive_part", character_json(psi)}},
            t};
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
    if (!file) throw OutputError("cannot open '" + o.out + "' for writing");
    file << text;
    file.flush();
    if (!file) throw OutputError("failed writing '" + o.out + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Multiplicative functions in arithmetic progressions: experiments and reports", "mfap"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", o.threads, "worker cap (0 = all cores)");
    app.add_option("--seed", o.seed, "seed recorded for randomized runs");
    app.add_option("--out", o.out, "write the report here instead of stdout");
    app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--verbose", o.verbose, "include per-modulus / per-prime detail");

    std::function<Outcome()> action;
    const auto on = [&](CLI::App* sub, auto fn) { sub->callback([&action, fn] { action = fn; }); };

    auto* constants = app.add_subcommand("constants", "delta1, delta0 and the constants 1 - 1/(m sin(pi/2m)), 1 - 1/(m tan(pi/2m))");
    constants->add_option("--name", o.name, "delta1 | delta0 | lemma33");
    constants->add_option("--tol", o.tol, "tolerance for delta1 (>= 1e-12)");
    constants->add_option("--m", o.m, "lemma33: integer m >= 2 or 'continuous'; omitted gives the minimum");
    on(constants, [&] { return run_constants(o); });

    auto* pretension = app.add_subcommand("pretension", "pretentious distance experiments");
    pretension->require_subcommand(1);
    auto* find = pretension->add_subcommand("find", "exceptional character and twist, with the distance spectrum");
    find->add_option("--f", o.f, "function spec")->required();
    find->add_option("--x", o.x)->required();
    find->add_option("--Q", o.Q, "conductor bound");
    find->add_option("--A", o.A, "twist range |t| <= A (default (log x)^2)");
    find->add_option("--depth", o.depth, "spectrum depth J");
    on(find, [&] { return run_pretension_find(o, err); });

    auto* mean = app.add_subcommand("meanvalues", "progression sums and mean-value bounds");
    mean->require_subcommand(1);
    auto* report = mean->add_subcommand("report", "residuals F(x;q,a) - chi(a) F(x;q,1) with reference errors");
    report->add_option("--f", o.f)->required();
    report->add_option("--x", o.x)->required();
    report->add_option("--q", o.q)->required();
    report->add_option("--Q", o.Q);
    report->add_option("--A", o.A, "twist range (default 2)");
    on(report, [&] { return run_meanvalues_report(o); });
    auto* halasz = mean->add_subcommand("halasz", "Halasz bound against the measured mean");
    halasz->add_option("--f", o.f)->required();
    halasz->add_option("--x", o.x)->required();
    halasz->add_option("--T", o.T);
    on(halasz, [&] { return run_meanvalues_halasz(o); });
    auto* euler = mean->add_subcommand("euler", "truncated Euler product and main-term prediction");
    euler->add_option("--f", o.f)->required();
    euler->add_option("--x", o.x)->required();
    euler->add_option("--q", o.q);
    euler->add_option("--psi", o.psi, "character char:q:index");
    euler->add_option("--t", o.t);
    euler->add_option("--P", o.P, "product truncation (default x)");
    on(euler, [&] { return run_meanvalues_euler(o); });

    auto* sieve = app.add_subcommand("sieve", "large sieve and progression experiments");
    sieve->require_subcommand(1);
    auto* bad = sieve->add_subcommand("bad-moduli", "moduli with large primitive-character mass");
    bad->add_option("--f", o.f)->required();
    bad->add_option("--x", o.x)->required();
    bad->add_option("--q", o.q);
    bad->add_option("--a", o.a);
    bad->add_option("--eta", o.eta)->required();
    on(bad, [&] { return run_sieve_bad_moduli(o, err); });
    auto* defect = sieve->add_subcommand("defect", "multiplicativity defect of F(x;q,.)");
    defect->add_option("--f", o.f)->required();
    defect->add_option("--x", o.x)->required();
    defect->add_option("--q", o.q)->required();
    on(defect, [&] { return run_sieve_defect(o); });
    auto* legendre = sieve->add_subcommand("legendre", "Legendre-symbol means along a progression");
    legendre->add_option("--q", o.q)->required();
    legendre->add_option("--a", o.a)->required();
    legendre->add_option("--x", o.x)->required();
    legendre->add_option("--p-limit", o.p_limit)->required();
    on(legendre, [&] { return run_sieve_legendre(o); });

    auto* nearchar = app.add_subcommand("nearchar", "near-character recovery");
    nearchar->require_subcommand(1);
    auto* recover = nearchar->add_subcommand("recover", "nearest character to g given as 'a: re,im' lines");
    recover->add_option("--q", o.q)->required();
    recover->add_option("--g", o.g_file)->required();
    on(recover, [&] { return run_nearchar_recover(o); });

    auto* chars = app.add_subcommand("chars", "Dirichlet characters");
    chars->require_subcommand(1);
    auto* list = chars->add_subcommand("list", "all characters mod q");
    list->add_option("--q", o.q)->required();
    on(list, [&] { return run_chars_list(o); });
    auto* eval = chars->add_subcommand("eval", "chi(n)");
    eval->add_option("--chi", o.chi)->required();
    eval->add_option("--n", o.n)->required();
    on(eval, [&] { return run_chars_eval(o); });
    auto* cond = chars->add_subcommand("conductor", "conductor and primitive part");
    cond->add_option("--chi", o.chi)->required();
    on(cond, [&] { return run_chars_conductor(o); });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kBadArguments;
    }

    try {
        set_thread_count(o.threads);
        Outcome outcome = action();
        std::string text;
        if (o.format == "csv") {
            text = to_csv(outcome.table);
        } else {
            std::string command;
            for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
                sub = sub->get_subcommands().front();
                command += (command.empty() ? "" : " ") + sub->get_name();
            }
            json config = outcome.config;
            config["subcommand"] = command;
            config["threads"] = o.threads;
            config["seed"] = o.seed;
            config["format"] = o.format;
            config["verbose"] = o.verbose;
            config["out"] = o.out.empty() ? json(nullptr) : json(o.out);
            const json doc = {{"tool", "mfap"},       {"version", kVersion}, {"kind", outcome.kind},
                              {"timestamp", utc_timestamp()}, {"config", config},  {"result", outcome.result}};
            text = doc.dump(2) + "\n";
            const auto problems = validate_report_text(text);
            if (!problems.empty()) throw std::logic_error("report fails its schema: " + problems.front());
        }
        emit(text, o, out);
        return kOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kBadArguments;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << "\n";
        return kPrecondition;
    } catch (const TheoremViolation& e) {
        err << "theorem check failed (implementation bug): " << e.what() << "\n";
        return kTheoremViolation;
    } catch (const OutputError& e) {
        err << "output error: " << e.what() << "\n";
        return kOutputUnwritable;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace mfap::cli
