#include "rayclass/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rayclass/bounds.hpp"
#include "rayclass/errors.hpp"
#include "rayclass/quadforms.hpp"
#include "rayclass/shimura.hpp"

namespace rayclass::cli {

nlohmann::ordered_json to_json(ClassPolynomial const & p)
{
    nlohmann::ordered_json j;
    j["discriminant"] = p.meta.discriminant;
    j["level"] = p.meta.level;
    j["exponent"] = p.meta.exponent;
    j["power"] = p.meta.power;
    j["degree"] = p.degree();
    auto coeffs = nlohmann::ordered_json::array();
    for (auto const & c : p.coefficients) coeffs.push_back(c.get_str());
    j["coefficients"] = std::move(coeffs);
    j["precision_bits"] = p.meta.precision_bits;
    j["max_rounding_residual"] = p.meta.max_rounding_residual.to_string(6);
    j["is_unit"] = is_unit(p);
    j["region"] = std::string(to_string(p.meta.region));
    j["mode"] = std::string(to_string(p.meta.mode));
    j["max_imaginary_residual"] = p.meta.max_imaginary_residual.to_string(6);
    return j;
}

namespace {

struct Options {
    std::int64_t disc = 0;
    std::int64_t level = 0;
    std::string mode = "reduced";
    std::uint64_t power = 1;
    std::optional<bits_t> precision;
    bool json = false;
    std::string cache;
    unsigned threads = 0;
    std::optional<std::string> lemma;
    std::int64_t nmax = 10000;
};

/* cache file: {"<disc>:<level>:<mode>:<power>": <classpoly document>, ...} */
std::string cache_key(Options const & o)
{
    return fmt::format("{}:{}:{}:{}", o.disc, o.level, o.mode, o.power);
}

nlohmann::ordered_json load_cache(std::string const & path)
{
    std::ifstream in(path);
    if (!in) return nlohmann::ordered_json::object();
    auto j = nlohmann::ordered_json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return nlohmann::ordered_json::object();
    return j;
}

void store_cache(std::string const & path, nlohmann::ordered_json const & cache)
{
    std::filesystem::path const target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
        out << cache.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, target);
}

/* a cached entry is only used when its shape still satisfies the degree law */
bool cached_entry_valid(nlohmann::ordered_json const & e, Options const & o, std::size_t degree)
{
    if (!e.is_object() || !e.contains("coefficients") || !e["coefficients"].is_array()) return false;
    auto const & c = e["coefficients"];
    if (c.size() != degree + 1 || e.value("degree", std::size_t{0}) != degree) return false;
    if (e.value("discriminant", std::int64_t{0}) != o.disc || e.value("level", std::int64_t{0}) != o.level)
        return false;
    if (!c[0].is_string() || c[0].get<std::string>() != "1") return false;
    return std::all_of(c.begin(), c.end(), [](auto const & x) {
        if (!x.is_string()) return false;
        mpz_class z;
        return z.set_str(x.template get<std::string>(), 10) == 0;
    });
}

void warn_region(Discriminant d, std::int64_t level, std::ostream & err)
{
    if (classify_region(d, level) == Region::unknown)
        err << fmt::format("warning: RegionUnknown: (d, N) = ({}, {}) is outside the ranges where "
                           "the generator property is known\n", d.value(), level);
}

int cmd_forms(Options const & o, std::ostream & out)
{
    Discriminant const d = validate_discriminant(o.disc);
    for (auto const & q : reduced_forms(d)) out << q.a << ' ' << q.b << ' ' << q.c << '\n';
    return exit_ok;
}

int cmd_wgroup(Options const & o, std::ostream & out)
{
    Discriminant const d = validate_discriminant(o.disc);
    for (auto const & m : w_group(d, o.level))
        out << m(0, 0) << ' ' << m(0, 1) << ' ' << m(1, 0) << ' ' << m(1, 1) << '\n';
    return exit_ok;
}

int cmd_conjugates(Options const & o, std::ostream & out)
{
    Discriminant const d = validate_discriminant(o.disc);
    // index r s, form a b c, W element entries
    for (auto const & c : conjugate_set(d, o.level))
        out << fmt::format("{} {}  {} {} {}  {} {} {} {}\n", c.index.r(), c.index.s(), c.form.a,
                           c.form.b, c.form.c, c.w_elt(0, 0), c.w_elt(0, 1), c.w_elt(1, 0),
                           c.w_elt(1, 1));
    return exit_ok;
}

int cmd_classpoly(Options const & o, std::ostream & out, std::ostream & err)
{
    Discriminant const d = validate_discriminant(o.disc);
    auto const mode = parse_exponent_mode(o.mode);
    if (!mode) throw usage_error("unknown mode " + o.mode);
    warn_region(d, o.level, err);

    std::size_t const degree = class_number(d) * w_group(d, o.level).size();
    nlohmann::ordered_json doc;
    nlohmann::ordered_json cache;
    bool hit = false;
    if (!o.cache.empty()) {
        cache = load_cache(o.cache);
        auto const key = cache_key(o);
        if (cache.contains(key)) {
            if (cached_entry_valid(cache[key], o, degree)) {
                doc = cache[key];
                hit = true;
            } else {
                err << "warning: discarding cache entry " << key << " (degree law violated)\n";
            }
        }
    }
    if (!hit) {
        ClassPolyOptions opts;
        opts.precision = o.precision;
        opts.threads = o.threads;
        ClassPolynomial const p = class_polynomial(d, o.level, *mode, o.power, opts);
        doc = to_json(p);
        if (!o.cache.empty()) {
            cache[cache_key(o)] = doc;
            store_cache(o.cache, cache);
        }
    }

    if (o.json) {
        out << doc.dump(2) << '\n';
    } else {
        for (auto const & c : doc["coefficients"]) out << c.get<std::string>() << '\n';
    }
    return exit_ok;
}

int cmd_verify_generator(Options const & o, std::ostream & out, std::ostream & err)
{
    Discriminant const d = validate_discriminant(o.disc);
    warn_region(d, o.level, err);
    auto const rep = verify_generator(d, o.level, o.precision.value_or(256), o.threads);
    out << fmt::format("conjugates {}\nexponent {}\nmin_gap {}\nthreshold {}\nregion {}\n",
                       rep.conjugates, rep.exponent, rep.min_gap.to_string(),
                       rep.threshold.to_string(), to_string(rep.region));
    return exit_ok;
}

nlohmann::ordered_json report_json(LemmaReport const & r)
{
    nlohmann::ordered_json j;
    j["lemma"] = r.lemma;
    j["range"] = r.range;
    j["pass"] = r.pass;
    if (std::isinf(r.worst_margin))
        j["worst_margin"] = "inf";
    else
        j["worst_margin"] = r.worst_margin;
    j["worst_value"] = r.worst_value;
    j["worst_at"] = r.worst_at;
    j["samples"] = r.samples;
    j["note"] = r.note;
    return j;
}

int cmd_verify_lemmas(Options const & o, bool have_disc, bool have_level, std::ostream & out)
{
    std::vector<std::string> const all = {"3.1", "3.2", "3.3", "3.4"};
    std::vector<std::string> wanted = o.lemma ? std::vector{*o.lemma} : all;
    bool const have_field = have_disc && have_level;
    if (o.lemma && *o.lemma != "3.1" && !have_field)
        throw usage_error("--lemma " + *o.lemma + " needs --disc and --level");

    std::vector<LemmaReport> reports;
    for (auto const & w : wanted) {
        if (w == "3.1") {
            ScalarScan scan;
            scan.n_max = o.nmax;
            scan.n_max_quadratic = std::min<std::int64_t>(o.nmax, scan.n_max_quadratic);
            scan.threads = o.threads;
            if (o.precision) scan.precision = *o.precision;
            if (have_disc) {
                validate_discriminant(o.disc);
                if (o.disc > -7) throw usage_error("the tail bounds need d <= -7");
                scan.discriminants = {o.disc};
            }
            for (auto part : {ScalarBound::i, ScalarBound::ii, ScalarBound::iii, ScalarBound::iv,
                              ScalarBound::v, ScalarBound::vi})
                reports.push_back(lemma31_check(part, scan));
            continue;
        }
        if (!have_field) continue;
        Discriminant const d = validate_discriminant(o.disc);
        ComparisonLemma const which = w == "3.2"   ? ComparisonLemma::nonprincipal_forms
                                      : w == "3.3" ? ComparisonLemma::shifted_row
                                                   : ComparisonLemma::zero_row;
        reports.push_back(lemma_comparison_scan(d, o.level, which, o.precision.value_or(128), o.threads));
    }

    bool ok = true;
    for (auto const & r : reports) ok = ok && r.pass;
    if (o.json) {
        auto arr = nlohmann::ordered_json::array();
        for (auto const & r : reports) arr.push_back(report_json(r));
        out << arr.dump(2) << '\n';
    } else {
        for (auto const & r : reports) {
            out << fmt::format("{} {}: {}; samples {}; worst margin {:.6g}", r.pass ? "PASS" : "FAIL",
                               r.lemma, r.range, r.samples, r.worst_margin);
            if (!r.worst_at.empty()) out << fmt::format(" at {} (value {:.10g})", r.worst_at, r.worst_value);
            if (!r.note.empty()) out << "; " << r.note;
            out << '\n';
        }
    }
    return ok ? exit_ok : exit_math_failure;
}

} // namespace

int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Ray class invariants from Siegel functions at CM points", "rayclass"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--threads", o.threads, "worker threads (0 = all cores)");

    auto disc_opt = [&](CLI::App * sub, bool required) {
        auto * opt = sub->add_option("--disc", o.disc, "fundamental discriminant d < 0");
        if (required) opt->required();
        return opt;
    };
    auto level_opt = [&](CLI::App * sub, bool required) {
        auto * opt = sub->add_option("--level", o.level, "conductor N >= 2")
                         ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 31));
        if (required) opt->required();
        return opt;
    };
    std::int64_t precision = 0;
    auto precision_opt = [&](CLI::App * sub, char const * help) {
        return sub->add_option("--precision", precision, help)->check(CLI::Range(bits_t{64}, bits_t{1} << 40));
    };

    auto * forms = app.add_subcommand("forms", "reduced primitive forms of discriminant d");
    disc_opt(forms, true);

    auto * wgroup = app.add_subcommand("wgroup", "W group modulo +-1, one matrix per line");
    disc_opt(wgroup, true);
    level_opt(wgroup, true);

    auto * conj = app.add_subcommand("conjugates", "Siegel indices and CM points of all conjugates");
    disc_opt(conj, true);
    level_opt(conj, true);

    auto * cpoly = app.add_subcommand("classpoly", "integer class polynomial of g_(0,1/N)^e(theta)");
    disc_opt(cpoly, true);
    level_opt(cpoly, true);
    cpoly->add_option("--mode", o.mode, "exponent 12N n (full) or 12N n / gcd(6, N) (reduced)")
        ->check(CLI::IsMember({"full", "reduced"}));
    cpoly->add_option("--power", o.power, "extra power n")->check(CLI::PositiveNumber);
    auto * cpoly_prec = precision_opt(cpoly, "starting precision in bits (default adaptive)");
    cpoly->add_flag("--json", o.json, "emit a JSON document");
    cpoly->add_option("--cache", o.cache, "JSON file of previously computed polynomials");

    auto * vgen = app.add_subcommand("verify-generator", "check that all conjugates are distinct");
    disc_opt(vgen, true);
    level_opt(vgen, true);
    auto * vgen_prec = precision_opt(vgen, "evaluation precision in bits (default 256)");

    auto * vlem = app.add_subcommand("verify-lemmas", "scan the analytic estimates numerically");
    auto * vlem_disc = disc_opt(vlem, false);
    auto * vlem_level = level_opt(vlem, false);
    vlem->add_option("--lemma", o.lemma, "which estimate to scan (default all)")
        ->check(CLI::IsMember({"3.1", "3.2", "3.3", "3.4"}));
    vlem->add_option("--nmax", o.nmax, "largest N for the scalar bounds")
        ->check(CLI::Range(std::int64_t{21}, std::int64_t{1} << 24));
    auto * vlem_prec = precision_opt(vlem, "evaluation precision in bits (default 128)");
    vlem->add_flag("--json", o.json, "emit JSON reports");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (CLI::ParseError const & e) {
        int const code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }
    for (auto * p : {cpoly_prec, vgen_prec, vlem_prec})
        if (p->count()) o.precision = static_cast<bits_t>(precision);

    try {
        if (forms->parsed()) return cmd_forms(o, out);
        if (wgroup->parsed()) return cmd_wgroup(o, out);
        if (conj->parsed()) return cmd_conjugates(o, out);
        if (cpoly->parsed()) return cmd_classpoly(o, out, err);
        if (vgen->parsed()) return cmd_verify_generator(o, out, err);
        if (vlem->parsed())
            return cmd_verify_lemmas(o, vlem_disc->count() > 0, vlem_level->count() > 0, out);
    } catch (usage_error const & e) {
        err << "error: " << e.name() << ": " << e.what() << '\n';
        return exit_usage;
    } catch (math_failure const & e) {
        err << "error: " << e.name() << ": " << e.what() << '\n';
        return exit_math_failure;
    } catch (std::invalid_argument const & e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (std::exception const & e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_usage;
}

} // namespace rayclass::cli
