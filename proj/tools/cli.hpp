#ifndef CONFSPACE_TOOLS_CLI_HPP
#define CONFSPACE_TOOLS_CLI_HPP

#include "confspace/confspace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace confspace::cli {

enum ExitCode : int { ok = 0, claim_failure = 1, input_error = 2, guardrail = 3 };

enum class Command { betti, ray, verify, ring_check };

struct RunConfig {
    Command command = Command::betti;
    std::optional<int> cpm;
    std::optional<std::string> ring_file;
    int k = 0;
    int k_min = 2;
    int k_max = 10;
    int offset = 0;
    std::string mode = "full";  // full | reduced | both
    std::string format;         // csv | json | text; empty picks the command default
    std::optional<std::string> output;
    unsigned jobs = 1;
    int p_max = 6;
    int deg_max = 4;
    std::uint64_t max_monomials = 2'000'000;
    bool homological = false;
    std::optional<std::string> dump_complex;
};

/// CONFSPACE_JOBS if set to a positive integer, otherwise the hardware concurrency.
inline unsigned default_jobs()
{
    if (const char* env = std::getenv("CONFSPACE_JOBS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0)
                return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GuardrailError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline RingPresentation load_ring(const RunConfig& cfg)
{
    if (cfg.cpm && cfg.ring_file)
        throw InputError("--cpm and --ring are mutually exclusive");
    if (cfg.cpm)
        return make_cpm(*cfg.cpm);
    if (cfg.ring_file)
        return ring_from_file(*cfg.ring_file);
    throw InputError("a ring source is required (--cpm M or --ring FILE)");
}

inline void check_mode(const RunConfig& cfg, const RingPresentation& ring)
{
    if (cfg.mode != "full" && cfg.mode != "reduced" && cfg.mode != "both")
        throw InputError("--mode must be full, reduced or both");
    if (cfg.mode != "full" && !ring.cpm)
        throw InputError("reduced mode is only available with --cpm");
}

inline void check_format(const std::string& format, std::initializer_list<const char*> allowed)
{
    for (const char* a : allowed)
        if (format == a)
            return;
    throw InputError("unsupported --format '" + format + "'");
}

inline void guard(const RingPresentation& ring, int k_lo, int k_hi, std::uint64_t cap)
{
    const auto gens = build_generators(ring);
    for (int k = k_lo; k <= k_hi; ++k)
        if (const auto n = count_monomials(gens, k); n > cap)
            throw GuardrailError("k = " + std::to_string(k) + " needs " + std::to_string(n) +
                                 " monomials, above --max-monomials " + std::to_string(cap));
}

inline std::vector<ComplexMode> modes_of(const std::string& mode)
{
    if (mode == "both")
        return {ComplexMode::full, ComplexMode::reduced};
    return {mode == "reduced" ? ComplexMode::reduced : ComplexMode::full};
}

inline std::string ray_to_csv(const HilbertRay& ray)
{
    std::ostringstream out;
    out << "k,dim\n";
    for (const auto& s : ray.samples)
        out << s.k << ',' << s.value << '\n';
    return out.str();
}

inline std::string certificate_line(const std::optional<QuasiPolynomial>& q)
{
    if (!q)
        return "quasi-polynomial: none within bounds";
    std::string s = "quasi-polynomial: period " + std::to_string(q->period) + ", onset " + std::to_string(q->onset) +
                    ", degree <= " + std::to_string(q->degree) + ", f = ";
    for (std::size_t r = 0; r < q->coefficients.size(); ++r)
        s += (r ? " | " : "") + polynomial_to_string(q->coefficients[r]);
    return s;
}

inline int run_betti(const RunConfig& cfg, std::string& text, std::ostream& err)
{
    const auto ring = load_ring(cfg);
    check_mode(cfg, ring);
    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    check_format(format, {"csv", "json", "text"});
    if (cfg.k < 0)
        throw InputError("--k must be >= 0");
    if (cfg.mode != "full" && cfg.k < 2)
        throw InputError("reduced mode requires k >= 2");
    guard(ring, cfg.k, cfg.k, cfg.max_monomials);

    auto gens = std::make_shared<const GeneratorSet>(build_generators(ring));
    std::vector<BettiTable> tables;
    for (auto mode : modes_of(cfg.mode)) {
        ChainComplex cx(gens, cfg.k, mode);
        if (cfg.dump_complex && mode == modes_of(cfg.mode).front()) {
            std::ofstream dump(*cfg.dump_complex);
            if (!dump)
                throw InputError("cannot write '" + *cfg.dump_complex + "'");
            dump << complex_to_json(cx).dump(2) << '\n';
        }
        tables.push_back(betti_of(cx));
        tables.back().indexing = cfg.homological ? Indexing::homological : Indexing::cohomological;
    }

    int status = ok;
    if (tables.size() == 2 && !tables[0].same_dims(tables[1])) {
        err << "full and reduced Betti tables differ\n";
        status = claim_failure;
    }
    if (format == "csv") {
        text = betti_to_csv(tables.front());
    } else if (format == "json") {
        if (tables.size() == 1) {
            text = betti_to_json(tables.front()).dump(2) + "\n";
        } else {
            nlohmann::ordered_json doc;
            doc["tables"] = {betti_to_json(tables[0]), betti_to_json(tables[1])};
            doc["agree"] = status == ok;
            text = doc.dump(2) + "\n";
        }
    } else {
        for (const auto& t : tables)
            text += betti_to_text(t);
    }
    return status;
}

inline int run_ray(const RunConfig& cfg, std::string& text, std::ostream& err)
{
    const auto ring = load_ring(cfg);
    check_mode(cfg, ring);
    const std::string format = cfg.format.empty() ? "csv" : cfg.format;
    check_format(format, {"csv", "json", "text"});
    if (cfg.k_min < 0 || cfg.k_max < cfg.k_min)
        throw InputError("k-range must be nonempty with k-min >= 0");
    if (cfg.offset < 0)
        throw InputError("--i must be >= 0");
    if (cfg.mode != "full" && cfg.k_min < 2)
        throw InputError("reduced mode requires k-min >= 2");
    guard(ring, cfg.k_min, cfg.k_max, cfg.max_monomials);

    ComplexCache cache;
    std::vector<HilbertRay> rays;
    for (auto mode : modes_of(cfg.mode))
        rays.push_back(hilbert_ray(ring, cfg.offset, cfg.k_min, cfg.k_max, mode, cfg.jobs, &cache));
    int status = ok;
    if (rays.size() == 2) {
        for (std::size_t i = 0; i < rays[0].samples.size(); ++i)
            if (rays[0].samples[i].value != rays[1].samples[i].value)
                status = claim_failure;
        if (status != ok)
            err << "full and reduced rays differ\n";
    }
    const auto& ray = rays.front();
    std::optional<QuasiPolynomial> cert;
    std::string cert_note;
    try {
        cert = detect_quasi_polynomial(ray.samples, cfg.p_max, cfg.deg_max);
    } catch (const UnderDeterminedError& e) {
        cert_note = e.what();
    }

    if (format == "csv") {
        text = ray_to_csv(ray);
        err << (cert_note.empty() ? certificate_line(cert) : "quasi-polynomial: under-determined: " + cert_note) << '\n';
    } else if (format == "json") {
        nlohmann::ordered_json doc;
        doc["ring"] = ray.ring;
        doc["offset"] = ray.offset;
        doc["mode"] = cfg.mode;
        doc["samples"] = nlohmann::ordered_json::array();
        for (const auto& s : ray.samples)
            doc["samples"].push_back({{"k", s.k}, {"dim", s.value}});
        doc["quasi_polynomial"] = cert ? quasi_polynomial_to_json(*cert) : nlohmann::ordered_json(nullptr);
        if (!cert_note.empty())
            doc["under_determined"] = cert_note;
        text = doc.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out << "k -> dim H^{k(d-2)+" << ray.offset << "}(C_k(" << ray.ring << "))\n";
        for (const auto& s : ray.samples)
            out << "  k = " << s.k << ": " << s.value << '\n';
        out << (cert_note.empty() ? certificate_line(cert) : "quasi-polynomial: under-determined: " + cert_note) << '\n';
        text = out.str();
    }
    return status;
}

inline int run_verify(const RunConfig& cfg, std::string& text)
{
    if (!cfg.cpm || cfg.ring_file)
        throw InputError("verify needs --cpm M");
    const std::string format = cfg.format.empty() ? "json" : cfg.format;
    check_format(format, {"json", "text"});
    if (*cfg.cpm < 1)
        throw InputError("--cpm must be >= 1");
    if (cfg.k_max < 8)
        throw InputError("--k-max must be >= 8");
    const auto ring = make_cpm(*cfg.cpm);
    guard(ring, 2, cfg.k_max, cfg.max_monomials);
    const auto rep = verify_extremal_ranges(*cfg.cpm, cfg.k_max, cfg.jobs, cfg.p_max, cfg.deg_max);
    text = format == "json" ? verify_report_to_json(rep).dump(2) + "\n" : verify_report_to_text(rep);
    return rep.passed() ? ok : claim_failure;
}

inline int run_ring_check(const RunConfig& cfg, std::string& text, std::ostream& err)
{
    const auto ring = load_ring(cfg);
    const std::string format = cfg.format.empty() ? "text" : cfg.format;
    check_format(format, {"json", "text"});
    const auto diag = validate_ring(ring);
    if (format == "json") {
        text = diagnostics_to_json(diag).dump(2) + "\n";
    } else {
        text = diag.valid() ? "ring '" + ring.id + "' is valid\n" : "";
        for (const auto& v : diag.violations)
            text += v.rule + ": " + v.message + "\n";
    }
    if (!diag.valid()) {
        err << "invalid ring: " << diag.violations.front().rule << ": " << diag.violations.front().message << '\n';
        return input_error;
    }
    return ok;
}

} // namespace detail

/// Executes one command. Output goes to cfg.output when set, otherwise to `out`;
/// diagnostics go to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    std::string text;
    int status = ok;
    try {
        switch (cfg.command) {
        case Command::betti:
            status = detail::run_betti(cfg, text, err);
            break;
        case Command::ray:
            status = detail::run_ray(cfg, text, err);
            break;
        case Command::verify:
            status = detail::run_verify(cfg, text);
            break;
        case Command::ring_check:
            status = detail::run_ring_check(cfg, text, err);
            break;
        }
    } catch (const detail::GuardrailError& e) {
        err << "error: " << e.what() << '\n';
        return guardrail;
    } catch (const detail::InputError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const RingFormatError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const RingValidationError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    } catch (const UnsupportedMode& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }

    if (cfg.output) {
        std::ofstream file(*cfg.output, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << *cfg.output << "'\n";
            return input_error;
        }
        file << text;
    } else {
        out << text;
    }
    return status;
}

/// Parses argv into a RunConfig and runs it.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact cohomology of unordered configuration spaces of even-dimensional closed manifolds"};
    app.require_subcommand(1);

    RunConfig cfg;
    cfg.jobs = default_jobs();
    int cpm = 0;
    std::string ring_file;

    auto add_ring = [&](CLI::App* sub) {
        auto* c = sub->add_option("--cpm", cpm, "use the built-in CP^m");
        auto* r = sub->add_option("--ring", ring_file, "ring presentation JSON file");
        c->excludes(r);
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "csv | json | text");
        sub->add_option("--output,-o", cfg.output, "write the result here instead of stdout");
        sub->add_option("--jobs,-j", cfg.jobs, "worker threads (default: $CONFSPACE_JOBS or hardware)");
        sub->add_option("--max-monomials", cfg.max_monomials, "abort with exit 3 above this many monomials per k");
    };

    auto* betti_cmd = app.add_subcommand("betti", "Betti table of C_k(M)");
    add_ring(betti_cmd);
    add_common(betti_cmd);
    betti_cmd->add_option("--k", cfg.k, "number of points")->required();
    betti_cmd->add_option("--mode", cfg.mode, "full | reduced | both");
    betti_cmd->add_flag("--homological", cfg.homological, "label degrees as homological");
    betti_cmd->add_option("--dump-complex", cfg.dump_complex, "write the complex (slices and blocks) as JSON");

    auto* ray_cmd = app.add_subcommand("ray", "extremal ray k -> dim H^{k(d-2)+i}");
    add_ring(ray_cmd);
    add_common(ray_cmd);
    ray_cmd->add_option("--i", cfg.offset, "offset i")->required();
    ray_cmd->add_option("--k-min", cfg.k_min, "first k");
    ray_cmd->add_option("--k-max", cfg.k_max, "last k");
    ray_cmd->add_option("--mode", cfg.mode, "full | reduced | both");
    ray_cmd->add_option("--p-max", cfg.p_max, "largest period tried by the detector");
    ray_cmd->add_option("--deg-max", cfg.deg_max, "largest degree tried by the detector");

    auto* verify_cmd = app.add_subcommand("verify", "extremal vanishing checks for CP^m");
    verify_cmd->add_option("--cpm", cpm, "m")->required();
    add_common(verify_cmd);
    verify_cmd->add_option("--k-max", cfg.k_max, "largest k (>= 8)");
    verify_cmd->add_option("--p-max", cfg.p_max, "largest period tried by the detector");
    verify_cmd->add_option("--deg-max", cfg.deg_max, "largest degree tried by the detector");

    auto* check_cmd = app.add_subcommand("ring-check", "validate a ring presentation");
    check_cmd->add_option("file", ring_file, "ring presentation JSON file");
    check_cmd->add_option("--cpm", cpm, "check the built-in CP^m instead");
    check_cmd->add_option("--format", cfg.format, "json | text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return input_error;
    }

    for (auto* sub : {betti_cmd, ray_cmd, verify_cmd, check_cmd})
        if (sub->parsed()) {
            auto given = [&](const char* name) {
                const auto* opt = sub->get_option_no_throw(name);
                return opt && opt->count() > 0;
            };
            if (given("--cpm"))
                cfg.cpm = cpm;
            if (given("--ring") || given("file"))
                cfg.ring_file = ring_file;
        }
    if (betti_cmd->parsed())
        cfg.command = Command::betti;
    else if (ray_cmd->parsed())
        cfg.command = Command::ray;
    else if (verify_cmd->parsed())
        cfg.command = Command::verify;
    else
        cfg.command = Command::ring_check;
    return run(cfg, out, err);
}

} // namespace confspace::cli

#endif // CONFSPACE_TOOLS_CLI_HPP
