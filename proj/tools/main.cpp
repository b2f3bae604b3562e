// mandel-laurent: generate and verify Laurent coefficient tables for the
// exterior Riemann map of the Mandelbrot set.

#include "selftest.hpp"

#include <mandel_laurent/mandel_laurent.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_internal = 2;
constexpr int exit_usage = 64;

constexpr const char *cache_env = "MANDEL_LAURENT_CACHE";

class CacheError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::size_t terms = 128;
    std::string theorem = "all";
    std::string format = "csv";
    std::string out;
    unsigned jobs = 1;
    std::string validation = "cheap";
    std::vector<std::size_t> bench_terms{64, 128, 256};
};

unsigned effective_jobs(unsigned jobs)
{
    if (jobs == 0) {
        return std::max(1u, std::thread::hardware_concurrency());
    }
    return jobs;
}

ml::ValidationLevel parse_validation(const std::string &v)
{
    if (v == "none") {
        return ml::ValidationLevel::none;
    }
    if (v == "full") {
        return ml::ValidationLevel::full;
    }
    return ml::ValidationLevel::cheap;
}

class Manifest {
public:
    Manifest(std::string command, const Options &opt) : command_(std::move(command))
    {
        parameters_ = ml::Json{{"terms", opt.terms},   {"theorem", opt.theorem}, {"format", opt.format},
                               {"out", opt.out},       {"jobs", opt.jobs},       {"validation", opt.validation}};
        if (command_ == "bench") {
            parameters_["terms"] = opt.bench_terms;
        }
    }

    void add_output(const fs::path &p) { outputs_.push_back(p.string()); }
    void set_summary(ml::Json summary) { summary_ = std::move(summary); }

    void write(const fs::path &path) const
    {
        ml::Json j{{"command", command_},
                   {"parameters", parameters_},
                   {"tool_version", ml::version},
                   {"wall_seconds", clock_.seconds()},
                   {"outputs", outputs_},
                   {"summary", summary_}};
        std::ofstream os(path);
        if (!os) {
            throw IoError("cannot write manifest " + path.string());
        }
        os << j.dump(2) << '\n';
    }

private:
    std::string command_;
    ml::Json parameters_;
    std::vector<std::string> outputs_;
    ml::Json summary_ = ml::Json::object();
    ml::detail::Stopwatch clock_;
};

void write_file(const fs::path &path, const std::string &content)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream os(path, std::ios::binary);
    if (!os || !(os << content) || !os.flush()) {
        throw IoError("cannot write " + path.string());
    }
}

struct Tables {
    ml::MonicSeries phi;
    ml::MonicSeries psi;
};

std::optional<fs::path> cache_path(std::size_t L)
{
    const char *dir = std::getenv(cache_env);
    if (dir == nullptr || *dir == '\0') {
        return std::nullopt;
    }
    return fs::path(dir) / ("tables_L" + std::to_string(L) + "_v" + ml::version + ".json");
}

void check_cached(const Tables &t, std::size_t L, ml::ValidationLevel validation, unsigned jobs)
{
    if (t.phi.truncation() != L || t.psi.truncation() != L) {
        throw CacheError("cached table has the wrong truncation");
    }
    if (validation == ml::ValidationLevel::none) {
        return;
    }
    if (validation == ml::ValidationLevel::full) {
        const ml::MonicSeries expected = ml::psi_from_phi(t.phi, validation, jobs);
        for (std::size_t ell = 0; ell <= L; ++ell) {
            if (expected[ell] != t.psi[ell]) {
                throw ml::ReversionMismatch("cached psi table disagrees with reversion at index " +
                                            std::to_string(ell));
            }
        }
    } else if (L >= 1 && (t.psi[0] != -t.phi[0] || t.psi[1] != -t.phi[1])) {
        throw ml::ReversionMismatch("cached psi table: leading coefficients are not -B_0, -B_1");
    }
}

Tables obtain_tables(std::size_t L, ml::ValidationLevel validation, unsigned jobs)
{
    const auto cached = cache_path(L);
    if (cached && fs::exists(*cached)) {
        Tables t;
        try {
            std::ifstream is(*cached);
            const ml::Json j = ml::Json::parse(is);
            t.phi = ml::series_from_json(j.at("phi"));
            t.psi = ml::series_from_json(j.at("psi"));
        } catch (const std::exception &e) {
            throw CacheError("unreadable cache file " + cached->string() + ": " + e.what());
        }
        check_cached(t, L, validation, jobs);
        return t;
    }
    Tables t;
    t.phi = ml::phi_series(L, jobs);
    t.psi = ml::psi_from_phi(t.phi, validation, jobs);
    if (cached) {
        const ml::Json j{{"version", ml::version},
                         {"L", L},
                         {"phi", ml::series_to_json(t.phi)},
                         {"psi", ml::series_to_json(t.psi)}};
        write_file(*cached, j.dump() + "\n");
    }
    return t;
}

std::string tables_csv(const Tables &t)
{
    std::ostringstream os;
    os << "ell,B,C\n";
    for (std::size_t ell = 0; ell <= t.phi.truncation(); ++ell) {
        os << ell << ',' << t.phi[ell] << ',' << t.psi[ell] << '\n';
    }
    return os.str();
}

int cmd_generate(const Options &opt)
{
    const unsigned jobs = effective_jobs(opt.jobs);
    Manifest manifest("generate", opt);
    const Tables t = obtain_tables(opt.terms, parse_validation(opt.validation), jobs);
    const fs::path out = opt.out.empty() ? fs::path("mandel_laurent_L" + std::to_string(opt.terms) + "." + opt.format)
                                         : fs::path(opt.out);
    if (opt.format == "json") {
        const ml::Json j{{"L", opt.terms}, {"phi", ml::series_to_json(t.phi)}, {"psi", ml::series_to_json(t.psi)}};
        write_file(out, j.dump(2) + "\n");
    } else {
        write_file(out, tables_csv(t));
    }
    manifest.add_output(out);
    manifest.set_summary(ml::Json{{"passed", true}, {"rows", opt.terms + 1}});
    manifest.write(out.string() + ".manifest.json");
    std::cout << "wrote " << out.string() << " (ell = 0.." << opt.terms << ")\n";
    return exit_ok;
}

std::vector<ml::VerificationReport> run_verifications(const std::string &theorem, const Tables &t, unsigned jobs)
{
    std::vector<ml::VerificationReport> out;
    const bool all = theorem == "all";
    if (all || theorem == "1") {
        out.push_back(ml::verify_theorem1(t.phi));
    }
    if (all || theorem == "2") {
        out.push_back(ml::verify_theorem2(t.psi));
    }
    if (all || theorem == "3") {
        out.push_back(ml::verify_theorem3(t.psi));
    }
    if (all || theorem == "4") {
        out.push_back(ml::verify_theorem4(t.psi));
    }
    if (all || theorem == "induction") {
        out.push_back(ml::verify_induction_steps(t.phi, t.psi, jobs));
    }
    return out;
}

int cmd_verify(const Options &opt)
{
    const unsigned jobs = effective_jobs(opt.jobs);
    Manifest manifest("verify", opt);
    const Tables t = obtain_tables(opt.terms, parse_validation(opt.validation), jobs);
    const auto reports = run_verifications(opt.theorem, t, jobs);

    bool passed = true;
    for (const auto &r : reports) {
        std::cout << ml::summarize(r) << '\n';
        for (const auto &v : r.violations()) {
            std::cout << "  violation ell=" << v.ell << " expected_p=" << v.expected_p
                      << " observed_ord=" << v.observed_ord << " is_zero=" << (v.is_zero ? "true" : "false") << '\n';
        }
        for (const auto &s : r.failed_steps()) {
            std::cout << "  violation ell=" << s.ell << " step=" << s.step << " " << s.observed << " " << s.relation
                      << " " << s.reference << " fails\n";
        }
        passed = passed && r.passed;
    }
    std::cout << "RESULT " << (passed ? "PASS" : "FAIL") << '\n';

    if (!opt.out.empty()) {
        const fs::path dir(opt.out);
        if (opt.format == "json") {
            ml::Json all = ml::Json::array();
            for (const auto &r : reports) {
                all.push_back(ml::report_to_json(r));
            }
            const fs::path p = dir / "report.json";
            write_file(p, ml::Json{{"L", opt.terms}, {"passed", passed}, {"reports", all}}.dump(2) + "\n");
            manifest.add_output(p);
        } else {
            for (const auto &r : reports) {
                std::ostringstream os;
                ml::write_report_csv(os, r);
                const fs::path p = dir / ("report_" + r.theorem + ".csv");
                write_file(p, os.str());
                manifest.add_output(p);
            }
        }
        ml::Json timings = ml::Json::object();
        for (const auto &r : reports) {
            timings[r.theorem] = r.wall_seconds;
        }
        manifest.set_summary(ml::Json{{"passed", passed}, {"reports", reports.size()}, {"check_seconds", timings}});
        manifest.write(dir / "manifest.json");
    }
    return passed ? exit_ok : exit_violation;
}

int cmd_selftest(const Options &opt)
{
    Manifest manifest("selftest", opt);
    const auto results = ml::cli::run_selftest(effective_jobs(opt.jobs));
    bool passed = true;
    ml::Json suites = ml::Json::object();
    for (const auto &r : results) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        passed = passed && r.passed;
        suites[r.name] = r.passed;
    }
    std::cout << "RESULT " << (passed ? "PASS" : "FAIL") << '\n';
    if (!opt.out.empty()) {
        manifest.set_summary(ml::Json{{"passed", passed}, {"suites", suites}});
        manifest.write(fs::path(opt.out) / "manifest.json");
    }
    return passed ? exit_ok : exit_violation;
}

std::size_t max_numerator_bits(const ml::MonicSeries &s)
{
    std::size_t bits = 0;
    for (const auto &c : s.coeffs()) {
        if (!c.is_zero()) {
            bits = std::max<std::size_t>(bits, mpz_sizeinbase(c.numerator().get_mpz_t(), 2));
        }
    }
    return bits;
}

int cmd_bench(const Options &opt)
{
    const unsigned jobs = effective_jobs(opt.jobs);
    Manifest manifest("bench", opt);
    std::ostringstream table;
    table << "L,phi_seconds,psi_seconds,max_numerator_bits_B,max_numerator_bits_C\n";
    for (std::size_t L : opt.bench_terms) {
        ml::detail::Stopwatch phi_clock;
        const ml::MonicSeries B = ml::phi_series(L, jobs);
        const double phi_s = phi_clock.seconds();
        ml::detail::Stopwatch psi_clock;
        const ml::MonicSeries C = ml::revert_lemma5(B, jobs);
        const double psi_s = psi_clock.seconds();
        table << L << ',' << phi_s << ',' << psi_s << ',' << max_numerator_bits(B) << ',' << max_numerator_bits(C)
              << '\n';
    }
    std::cout << table.str();
    if (!opt.out.empty()) {
        const fs::path p(opt.out);
        write_file(p, table.str());
        manifest.add_output(p);
        manifest.set_summary(ml::Json{{"passed", true}});
        manifest.write(p.string() + ".manifest.json");
    }
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Laurent coefficients of the exterior Riemann map of the Mandelbrot set"};
    app.set_version_flag("--version", std::string(ml::version));
    app.require_subcommand(1);

    Options opt;
    const auto add_common = [&](CLI::App *sub) {
        sub->add_option("-j,--jobs", opt.jobs, "Worker threads (0 = all cores)")->capture_default_str();
        sub->add_option("--validation", opt.validation, "Cross-checks on reversion")
            ->check(CLI::IsMember({"none", "cheap", "full"}))
            ->capture_default_str();
    };

    CLI::App *generate = app.add_subcommand("generate", "Write B and C coefficient tables");
    generate->add_option("-L,--terms", opt.terms, "Highest coefficient index")->required()->check(CLI::PositiveNumber);
    generate->add_option("--format", opt.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    generate->add_option("--out", opt.out, "Output file");
    add_common(generate);

    CLI::App *verify = app.add_subcommand("verify", "Check the valuation theorems on computed tables");
    verify->add_option("-L,--terms,--max", opt.terms, "Highest coefficient index")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    verify->add_option("--theorem", opt.theorem)
        ->check(CLI::IsMember({"1", "2", "3", "4", "induction", "all"}))
        ->capture_default_str();
    verify->add_option("--format", opt.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    verify->add_option("--out", opt.out, "Directory for report files and manifest");
    add_common(verify);

    CLI::App *selftest = app.add_subcommand("selftest", "Run the combinatorial and oracle self-checks");
    selftest->add_option("--out", opt.out, "Directory for the manifest");
    add_common(selftest);

    CLI::App *bench = app.add_subcommand("bench", "Time generation and reversion");
    bench->add_option("-L,--terms", opt.bench_terms, "Comma-separated truncation list")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    bench->add_option("--out", opt.out, "CSV output file");
    add_common(bench);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*generate) {
            return cmd_generate(opt);
        }
        if (*verify) {
            return cmd_verify(opt);
        }
        if (*selftest) {
            return cmd_selftest(opt);
        }
        if (*bench) {
            return cmd_bench(opt);
        }
    } catch (const ml::ReversionMismatch &e) {
        std::cerr << "internal inconsistency: " << e.what() << '\n';
        return exit_internal;
    } catch (const CacheError &e) {
        std::cerr << "internal inconsistency: " << e.what() << '\n';
        return exit_internal;
    } catch (const IoError &e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return exit_violation;
    }
    return exit_usage;
}
