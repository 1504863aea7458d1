#include "digitdim_cli/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

namespace digitdim::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

OutputFormat parse_format(const std::string& s)
{
    if (s == "json")
        return OutputFormat::json;
    if (s == "table")
        return OutputFormat::table;
    throw UsageError("--format must be json or table");
}

std::string interval_text(const Enclosure& x)
{
    return "[" + x.lower_decimal() + ", " + x.upper_decimal() + "]";
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text)
{
    if (cfg.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.output);
    if (!file)
        throw UsageError("cannot open output file '" + cfg.output + "'");
    file << text;
}

void table_row(std::ostringstream& os, const std::string& key, const std::string& value)
{
    os << std::left << std::setw(16) << key << value << '\n';
}

std::string certificate_table(const Certificate& c)
{
    std::ostringstream os;
    table_row(os, "system", c.system);
    table_row(os, "direction", to_string(c.direction));
    table_row(os, "L", std::to_string(c.level));
    table_row(os, "delta", to_string(c.delta));
    table_row(os, "tau", to_string(c.tau));
    table_row(os, "grid_count", std::to_string(c.grid_count));
    table_row(os, "grid_max", interval_text(c.grid_max));
    table_row(os, "grid_min", interval_text(c.grid_min));
    table_row(os, "lipschitz", interval_text(c.lipschitz));
    table_row(os, "slack", interval_text(c.slack));
    table_row(os, "threshold", interval_text(c.threshold));
    table_row(os, "verdict", to_string(c.verdict));
    table_row(os, "precision_bits", std::to_string(c.precision.bits));
    return os.str();
}

std::string bracket_table(const BoundBracket& b)
{
    std::ostringstream os;
    os << "L=" << b.level << " delta=" << to_string(b.delta)
       << " lower=" << (b.lower ? interval_text(*b.lower) : "-")
       << " upper=" << (b.upper ? interval_text(*b.upper) : "-") << '\n';
    return os.str();
}

int verdict_exit(Verdict v)
{
    switch (v) {
    case Verdict::pass: return exit_pass;
    case Verdict::fail: return exit_fail;
    case Verdict::inconclusive: return exit_inconclusive;
    }
    return exit_usage;
}

EvalOptions eval_options(const RunConfig& cfg)
{
    EvalOptions opts;
    opts.precision = cfg.precision;
    opts.workers = cfg.jobs;
    return opts;
}

std::function<void(std::int64_t, std::int64_t)> progress_printer(std::ostream& err, const std::string& label)
{
    return [&err, label, last = std::int64_t{-1}](std::int64_t done, std::int64_t total) mutable {
        const std::int64_t pct = done * 100 / total;
        if (pct / 10 != last / 10 || done == total) {
            err << label << ": " << done << "/" << total << " grid points\n";
            last = pct;
        }
    };
}

// certify -------------------------------------------------------------------

int cmd_certify(const RunConfig& cfg, bool progress, std::ostream& out, std::ostream& err)
{
    const DigitSystem sys = parse_system(cfg.system);
    const Rational tau = resolve_tau(cfg.tau, sys.base());
    EvalOptions opts = eval_options(cfg);
    if (progress)
        opts.progress = progress_printer(err, "certify");
    const Certificate cert = verify(sys, cfg.direction, cfg.level, cfg.delta, tau, opts);
    emit(cfg, out, cfg.format == OutputFormat::json ? dump(to_json(cert)) : certificate_table(cert));
    return verdict_exit(cert.verdict);
}

// reproduce -----------------------------------------------------------------

std::vector<int> bases_of(const Json& spec)
{
    std::vector<int> out;
    if (spec.is_array()) {
        for (const auto& b : spec)
            out.push_back(b.get<int>());
    } else {
        for (int b = spec.at("from").get<int>(); b <= spec.at("to").get<int>(); ++b)
            out.push_back(b);
    }
    return out;
}

std::vector<int> missing_of(const Json& spec, int base)
{
    std::vector<int> out;
    if (spec.is_string()) {
        if (spec.get<std::string>() != "symmetric")
            throw std::logic_error("manifest: unknown digit selector");
        for (int a = 0; a <= (base - 1) / 2; ++a)
            out.push_back(a);
    } else {
        for (const auto& a : spec)
            out.push_back(a.get<int>());
    }
    return out;
}

struct ReproOutcome {
    ReproCase spec;
    Certificate cert;
};

int cmd_reproduce(const RunConfig& cfg, const std::string& table, const std::optional<std::vector<int>>& bases,
                  bool full, const std::string& output_dir, bool quiet, std::ostream& out, std::ostream& err)
{
    const auto cases = expand_table(table, bases, full);
    if (!output_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(output_dir, ec);
        if (ec)
            throw UsageError("cannot create '" + output_dir + "': " + ec.message());
    }
    if (cases.empty())
        throw UsageError("no cases selected");
    std::vector<ReproOutcome> outcomes;
    std::vector<std::string> failures;
    const EvalOptions opts = eval_options(cfg);
    std::size_t index = 0;
    for (const auto& c : cases) {
        ++index;
        const DigitSystem sys = DigitSystem::one_missing(c.base, c.missing);
        Certificate cert = verify(sys, c.direction, c.level, c.delta, resolve_tau(c.tau, c.base), opts);
        if (!quiet)
            err << "[" << index << "/" << cases.size() << "] " << c.table << " " << cert.system << " "
                << to_string(cert.direction) << " L=" << cert.level << ": " << to_string(cert.verdict) << '\n';
        if (cert.verdict != c.expect)
            failures.push_back(c.table + " " + cert.system + ": expected " + to_string(c.expect) + ", got " +
                               to_string(cert.verdict));
        if (!output_dir.empty()) {
            const std::string path = output_dir + "/" + c.table + "_b" + std::to_string(c.base) + "_a" +
                                     std::to_string(c.missing) + ".json";
            std::ofstream file(path);
            if (!file)
                throw UsageError("cannot write '" + path + "'");
            file << dump(to_json(cert));
        }
        outcomes.push_back(ReproOutcome{c, std::move(cert)});
    }

    if (cfg.format == OutputFormat::json) {
        Json doc;
        doc["table"] = table;
        Json certs = Json::array();
        for (const auto& o : outcomes)
            certs.push_back(to_json(o.cert));
        doc["certificates"] = std::move(certs);
        Json summary;
        summary["cases"] = outcomes.size();
        summary["as_expected"] = outcomes.size() - failures.size();
        summary["failures"] = failures;
        doc["summary"] = std::move(summary);
        doc["tool_version"] = tool_version();
        emit(cfg, out, dump(doc));
    } else {
        std::ostringstream os;
        for (const auto& o : outcomes) {
            const Certificate& c = o.cert;
            const Enclosure& extremum = c.direction == Direction::lower ? c.grid_max : c.grid_min;
            os << std::left << std::setw(20) << o.spec.table << std::setw(18) << c.system << std::setw(7)
               << to_string(c.direction) << "L=" << c.level << "  grid=" << std::setw(7) << c.grid_count
               << (c.direction == Direction::lower ? " max=" : " min=") << std::setw(10) << std::setprecision(7)
               << extremum.midpoint() << " threshold=" << std::setw(10) << c.threshold.midpoint() << "  "
               << to_string(c.verdict) << '\n';
        }
        os << outcomes.size() - failures.size() << "/" << outcomes.size() << " as expected\n";
        emit(cfg, out, os.str());
    }
    for (const auto& f : failures)
        err << "unexpected verdict: " << f << '\n';
    return failures.empty() ? exit_pass : exit_fail;
}

// dimension -----------------------------------------------------------------

int cmd_dimension(const RunConfig& cfg, const RefineBudget& budget, std::ostream& out)
{
    const DigitSystem sys = parse_system(cfg.system);
    const RefineResult r = refine_dimension(sys, cfg.eps, budget, eval_options(cfg));
    if (cfg.format == OutputFormat::json) {
        Json doc;
        doc["system"] = sys.describe();
        doc["eps"] = to_string(cfg.eps);
        const Json body = to_json(r);
        for (const auto& [key, value] : body.items())
            doc[key] = value;
        emit(cfg, out, dump(doc));
    } else {
        std::ostringstream os;
        os << "system  " << sys.describe() << '\n';
        os << "status  " << to_string(r.status) << '\n';
        os << "bracket " << bracket_table(r.bracket);
        os << "grid points evaluated: " << r.grid_points << '\n';
        for (const auto& b : r.history)
            os << "  " << bracket_table(b);
        emit(cfg, out, os.str());
    }
    return r.status == RefineStatus::converged ? exit_pass : exit_inconclusive;
}

// analytic ------------------------------------------------------------------

std::string analytic_table(const AnalyticBound& b)
{
    std::ostringstream os;
    table_row(os, "kind", to_string(b.kind));
    table_row(os, "b", std::to_string(b.base));
    table_row(os, "l", std::to_string(b.length));
    if (b.ap) {
        table_row(os, "a", std::to_string(b.ap->offset));
        table_row(os, "d", std::to_string(b.ap->step));
    }
    if (b.dimension)
        table_row(os, "dimension", interval_text(*b.dimension));
    table_row(os, "value", interval_text(b.value));
    if (b.kind != AnalyticKind::expsum)
        table_row(os, "vs 1/2", to_string(compare_threshold(b.value, Rational(1, 2))));
    for (const auto& w : b.warnings)
        table_row(os, "warning", w);
    return os.str();
}

void emit_analytic(const RunConfig& cfg, std::ostream& out, std::ostream& err, const AnalyticBound& b)
{
    for (const auto& w : b.warnings)
        err << "warning: " << w << '\n';
    emit(cfg, out, cfg.format == OutputFormat::json ? dump(to_json(b)) : analytic_table(b));
}

// consequences --------------------------------------------------------------

std::string report_table(const ExponentReport& r)
{
    std::ostringstream os;
    table_row(os, "system", r.system);
    table_row(os, "v_source", r.v_source);
    table_row(os, "kappa", interval_text(r.kappa));
    table_row(os, "v", interval_text(r.v));
    table_row(os, "E", interval_text(r.counting_exponent));
    table_row(os, "rho_counting", interval_text(r.rho_counting));
    table_row(os, "alpha_star", interval_text(r.alpha_star));
    table_row(os, "rho_intrinsic", interval_text(r.rho_intrinsic));
    table_row(os, "bd_product", interval_text(r.bd_product));
    table_row(os, "bd_holds", to_string(r.bd_holds));
    return os.str();
}

Certificate read_certificate(const std::string& path)
{
    std::ifstream file(path);
    if (!file)
        throw UsageError("cannot read certificate '" + path + "'");
    Json j;
    try {
        j = Json::parse(file);
    } catch (const Json::parse_error& e) {
        throw UsageError("'" + path + "' is not valid JSON: " + e.what());
    }
    return certificate_from_json(j);
}

int cmd_consequences(const RunConfig& cfg, const std::string& v_from, const std::string& v_text, bool analytic,
                     std::ostream& out)
{
    const int sources = int(!v_from.empty()) + int(!v_text.empty()) + int(analytic);
    if (sources != 1)
        throw UsageError("give exactly one of --v-from, --v, --analytic");

    std::optional<Certificate> cert;
    if (!v_from.empty())
        cert = read_certificate(v_from);
    if (cfg.system.empty() && !cert)
        throw UsageError("--system is required");
    const DigitSystem sys = parse_system(cfg.system.empty() ? cert->system : cfg.system);
    const Precision prec = cfg.precision;

    Enclosure v(prec);
    std::string source;
    if (cert) {
        if (cert->system != sys.describe())
            throw UsageError("certificate is for '" + cert->system + "', not '" + sys.describe() + "'");
        if (cert->direction != Direction::lower || cert->verdict != Verdict::pass)
            throw UsageError("certificate must be a passing lower verification");
        v = Enclosure::from_rational(certified_lower_bound(*cert).lower_rational(), prec);
        source = "certificate";
    } else if (analytic) {
        if (!sys.missing_digit())
            throw UsageError("--analytic needs a one-missing-digit system");
        v = Enclosure::from_rational(lower_bound_one_missing(sys.base(), prec).lower_rational(), prec);
        source = "analytic";
    } else {
        v = Enclosure::from_rational(parse_rational(v_text), prec);
        source = "given";
    }
    ExponentReport r = exponent_report(hausdorff_dimension(sys, prec), v);
    r.system = sys.describe();
    r.v_source = source;
    emit(cfg, out, cfg.format == OutputFormat::json ? dump(to_json(r)) : report_table(r));
    return exit_pass;
}

} // namespace

Precision resolve_precision(std::optional<long> flag)
{
    long bits = kDefaultPrecision.bits;
    if (flag) {
        bits = *flag;
    } else if (const char* env = std::getenv("DIGITDIM_PRECISION"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        bits = std::strtol(env, &end, 10);
        if (*end != '\0')
            throw UsageError(std::string("DIGITDIM_PRECISION is not an integer: '") + env + "'");
    }
    if (bits < 16 || bits > (1L << 16))
        throw UsageError("precision must be between 16 and 65536 bits, got " + std::to_string(bits));
    return Precision{bits};
}

Rational resolve_tau(std::string_view text, int base)
{
    if (text == "bd")
        return tau_for_bd(base).exact;
    return parse_rational(text);
}

std::vector<ReproCase> expand_table(std::string_view table, const std::optional<std::vector<int>>& bases, bool full)
{
    const Json manifest = Json::parse(reproduce_manifest());
    std::vector<ReproCase> out;
    bool known = false;
    for (const auto& t : manifest.at("tables")) {
        const std::string name = t.at("name").get<std::string>();
        if (table != "all" && table != name)
            continue;
        known = true;
        std::optional<std::set<int>> keep;
        if (bases)
            keep = std::set<int>(bases->begin(), bases->end());
        else if (!full && t.contains("default_bases"))
            keep = t.at("default_bases").get<std::set<int>>();
        const Direction direction = parse_direction(t.at("direction").get<std::string>());
        const Verdict expect = parse_verdict(t.at("expect").get<std::string>());
        for (const auto& g : t.at("groups")) {
            for (int b : bases_of(g.at("bases"))) {
                if (keep && !keep->contains(b))
                    continue;
                for (int a : missing_of(g.at("missing"), b)) {
                    out.push_back(ReproCase{name, direction, b, a, g.at("L").get<int>(),
                                            parse_rational(g.at("delta").get<std::string>()),
                                            g.at("tau").get<std::string>(), expect});
                }
            }
        }
    }
    if (!known)
        throw UsageError("unknown table '" + std::string(table) + "'");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Certified bounds on the Fourier l1 dimension of missing-digit measures", "digitdim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version());

    RunConfig cfg;
    std::optional<long> precision_flag;
    std::string format = "json";
    std::string delta_text;
    std::string eps_text;
    std::string direction_text;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--precision", precision_flag, "Working precision in bits (default 128)");
        sub->add_option("--format", format, "Output format: json or table")->capture_default_str();
        sub->add_option("--output,-o", cfg.output, "Write the result to this file instead of stdout");
    };
    auto add_jobs = [&](CLI::App* sub) {
        sub->add_option("--jobs,-j", cfg.jobs, "Worker threads for grid evaluation")->check(CLI::Range(1U, 1024U));
    };

    bool progress = false;
    auto* certify = app.add_subcommand("certify", "Verify one grid inequality and write a certificate");
    certify->add_option("--system", cfg.system, "Digit system, e.g. \"b=5 missing=1\"")->required();
    certify->add_option("--direction", direction_text, "lower or upper")->required();
    certify->add_option("--L", cfg.level, "Cocycle length L")->required()->check(CLI::PositiveNumber);
    certify->add_option("--delta", delta_text, "Grid spacing (exact rational or decimal)")->required();
    certify->add_option("--tau", cfg.tau, "Exponent tau (rational, or bd for log b/(2 log(b-1)))")->required();
    certify->add_flag("--progress", progress, "Report grid progress on stderr");
    add_common(certify);
    add_jobs(certify);

    std::string table;
    std::vector<int> bases;
    bool full = false;
    bool print_manifest = false;
    bool quiet = false;
    std::string output_dir;
    auto* reproduce = app.add_subcommand("reproduce", "Run the stored verification tables");
    reproduce->add_option("--table", table, "prop24_small, prop24_exceptional, prop2425_large or all");
    reproduce->add_option("--bases", bases, "Restrict to these bases")->delimiter(',');
    reproduce->add_flag("--full", full, "Run every base of the large-base table");
    reproduce->add_flag("--print-manifest", print_manifest, "Print the embedded manifest and exit");
    reproduce->add_option("--output-dir", output_dir, "Also write one certificate file per case here");
    reproduce->add_flag("--quiet,-q", quiet, "No per-case progress on stderr");
    add_common(reproduce);
    add_jobs(reproduce);

    RefineBudget budget;
    auto* dimension = app.add_subcommand("dimension", "Bracket the Fourier l1 dimension to a tolerance");
    dimension->add_option("--system", cfg.system, "Digit system")->required();
    dimension->add_option("--eps", eps_text, "Target bracket width")->required();
    dimension->add_option("--max-grid", budget.max_grid_points, "Budget in F_L evaluations")->capture_default_str();
    dimension->add_option("--max-level", budget.max_level, "Largest L to try")->capture_default_str();
    dimension->add_option("--max-halvings", budget.max_halvings, "Halvings of delta per level")
        ->capture_default_str();
    add_common(dimension);
    add_jobs(dimension);

    auto* analytic = app.add_subcommand("analytic", "Closed-form lower bounds");
    analytic->require_subcommand(1);
    int b = 0;
    int l = 0;
    APDigitSpec ap;
    auto* one_missing = analytic->add_subcommand("one-missing", "Bound for one missing digit");
    one_missing->add_option("--b", b, "Base")->required();
    add_common(one_missing);
    auto* ap_cmd = analytic->add_subcommand("ap", "Bound for an arithmetic-progression digit set");
    ap_cmd->add_option("--b", b, "Base")->required();
    ap_cmd->add_option("--a", ap.offset, "Offset")->required();
    ap_cmd->add_option("--d", ap.step, "Step")->required();
    ap_cmd->add_option("--l", ap.length, "Length")->required();
    add_common(ap_cmd);
    auto* expsum = analytic->add_subcommand("expsum", "Exponential-sum bound b(1+log 2l)+3l+2");
    expsum->add_option("--b", b, "Base")->required();
    expsum->add_option("--l", l, "Length")->required();
    add_common(expsum);
    std::string threshold_text = "1/2";
    std::string kind_text = "one_missing";
    auto* smallest = analytic->add_subcommand("smallest-base", "Smallest base whose bound exceeds a threshold");
    smallest->add_option("--threshold", threshold_text, "Threshold in (0, 1)")->capture_default_str();
    smallest->add_option("--kind", kind_text, "one_missing or one_missing_times_dim")->capture_default_str();
    add_common(smallest);

    std::string v_from;
    std::string v_text;
    bool v_analytic = false;
    auto* consequences = app.add_subcommand("consequences", "Exponents implied by a lower bound v");
    consequences->add_option("--system", cfg.system, "Digit system");
    consequences->add_option("--v-from", v_from, "Take v from a passing lower certificate");
    consequences->add_option("--v", v_text, "Take v as this rational");
    consequences->add_flag("--analytic", v_analytic, "Take v from the one-missing-digit closed form");
    add_common(consequences);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    try {
        cfg.precision = resolve_precision(precision_flag);
        cfg.format = parse_format(format);
        if (certify->parsed()) {
            cfg.subcommand = "certify";
            cfg.direction = parse_direction(direction_text);
            cfg.delta = parse_rational(delta_text);
            return cmd_certify(cfg, progress, out, err);
        }
        if (reproduce->parsed()) {
            cfg.subcommand = "reproduce";
            if (print_manifest) {
                out << reproduce_manifest();
                return exit_pass;
            }
            if (table.empty())
                throw UsageError("--table is required");
            std::optional<std::vector<int>> filter;
            if (!bases.empty())
                filter = bases;
            return cmd_reproduce(cfg, table, filter, full, output_dir, quiet, out, err);
        }
        if (dimension->parsed()) {
            cfg.subcommand = "dimension";
            cfg.eps = parse_rational(eps_text);
            return cmd_dimension(cfg, budget, out);
        }
        if (analytic->parsed()) {
            cfg.subcommand = "analytic";
            if (one_missing->parsed()) {
                emit_analytic(cfg, out, err, analytic_one_missing(b, cfg.precision));
            } else if (ap_cmd->parsed()) {
                emit_analytic(cfg, out, err, analytic_ap(b, ap, cfg.precision));
            } else if (expsum->parsed()) {
                emit_analytic(cfg, out, err, analytic_expsum(b, l, cfg.precision));
            } else {
                const Rational threshold = parse_rational(threshold_text);
                const BaseCriterion kind = parse_base_criterion(kind_text);
                const SmallestBase s = smallest_base(threshold, kind, cfg.precision);
                if (cfg.format == OutputFormat::json) {
                    emit(cfg, out, dump(to_json(s, threshold, kind)));
                } else {
                    std::ostringstream os;
                    table_row(os, "criterion", to_string(kind));
                    table_row(os, "threshold", to_string(threshold));
                    table_row(os, "b", std::to_string(s.base));
                    table_row(os, "value", interval_text(s.value));
                    if (s.previous)
                        table_row(os, "value at b-1", interval_text(*s.previous));
                    emit(cfg, out, os.str());
                }
            }
            return exit_pass;
        }
        cfg.subcommand = "consequences";
        return cmd_consequences(cfg, v_from, v_text, v_analytic, out);
    } catch (const NotFoundError& e) {
        err << "digitdim: " << e.what() << '\n';
        return exit_fail;
    } catch (const std::exception& e) {
        err << "digitdim: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace digitdim::cli
