#include "qhl/cli.hpp"

#include "qhl/json_io.hpp"
#include "qhl/modular.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qhl {

namespace {

constexpr int kOk = 0, kNegative = 1, kUsage = 2, kInternal = 3;

Integer parse_integer(const std::string& text, const std::string& what) {
    Integer n;
    std::string t = text;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    require(!t.empty() && n.set_str(t, 10) == 0, "malformed integer for " + what + ": '" + text + "'");
    return n;
}

Rational parse_rational(const std::string& text, const std::string& what) {
    Rational q;
    require(q.set_str(text, 10) == 0, "malformed rational for " + what + ": '" + text + "'");
    require(q.get_den() != 0, "zero denominator for " + what);
    q.canonicalize();
    return q;
}

Integer parse_prime(const std::string& text) {
    Integer p = parse_integer(text, "prime");
    require(p >= 2 && is_prime(p), "not a prime: " + text);
    return p;
}

std::array<Integer, 3> parse_prime_triple(const std::string& text) {
    std::string t = text;
    for (char& c : t)
        if (c == ',') c = ' ';
    std::istringstream in(t);
    std::vector<std::string> parts;
    for (std::string s; in >> s;) parts.push_back(s);
    require(parts.size() == 3, "expected three primes p1,p2,p3");
    return {parse_prime(parts[0]), parse_prime(parts[1]), parse_prime(parts[2])};
}

ProjectiveRoot parse_root(const std::string& text, const Integer& p) {
    if (text == "inf" || text == "infinity") return ProjectiveRoot::infinity();
    return ProjectiveRoot::finite(mod(parse_integer(text, "root"), p));
}

unsigned default_jobs() {
    if (const char* env = std::getenv("QHL_JOBS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
    }
    return 1;
}

struct Options {
    std::string output;
    unsigned jobs = 1;
    std::vector<std::string> form;
    std::string h, m, prime, root, primes, eps = "1/12", I, J, report_path, corpus;
    long box = 0;
    std::uint64_t seed = 0;
    std::uint64_t cutoff = 10000;
    unsigned digits = 30;
    bool mu = false;
};

BinaryQuarticForm form_of(const Options& o) {
    std::string joined;
    for (const auto& s : o.form) joined += s + " ";
    return parse_form(joined);
}

Json cmd_invariants(const Options& o, int& code) {
    auto f = form_of(o);
    auto d = invariants(f);
    Json j = to_json(d);
    j["schema"] = "qhl.invariants/1";
    j["form"] = to_json(f);
    j["real_roots"] = f.is_zero() ? Json(nullptr) : Json(count_real_roots(f));
    code = kOk;
    return j;
}

Json cmd_admissible(const Options& o, int& code) {
    Integer I = parse_integer(o.I, "I"), J = parse_integer(o.J, "J");
    bool ok = invariant_pair_admissible(I, J);
    Json j{{"schema", "qhl.admissible/1"}, {"I", to_json(I)}, {"J", to_json(J)}, {"admissible", ok}};
    j["realization"] = nullptr;
    if (ok)
        if (auto f = realize_invariants(I, J)) j["realization"] = to_json(*f);
    code = ok ? kOk : kNegative;
    return j;
}

Json cmd_split(const Options& o, int& code) {
    auto f = form_of(o);
    Integer p = parse_prime(o.prime);
    Json roots = Json::array();
    for (const auto& r : roots_mod_p(f, p)) roots.push_back({{"root", to_json(r.root)}, {"multiplicity", r.multiplicity}});
    Json j{{"schema", "qhl.split/1"}, {"form", to_json(f)}, {"p", to_json(p)}, {"roots", roots}};
    auto s = p >= 5 ? splits_completely(f, p) : std::nullopt;
    j["splits_completely"] = s.has_value();
    j["split"] = s ? to_json(*s) : Json(nullptr);
    j["L1L2cubed"] = is_L1_L2cubed(f, p).has_value();
    j["square_class"] = is_square_class(f, p);
    j["split_square_class"] = is_split_square_class(f, p);
    code = s ? kOk : kNegative;
    return j;
}

Json cmd_descend(const Options& o, int& code) {
    auto f = form_of(o);
    Integer p = parse_prime(o.prime);
    ProjectiveRoot r = parse_root(o.root, p);
    BinaryQuarticForm g = descend_at(f, p, r);
    code = kOk;
    return {{"schema", "qhl.descend/1"},
            {"form", to_json(f)},
            {"label", to_string(DescentLabel{p, r})},
            {"matrix", to_json(descent_matrix(p, r))},
            {"descendant", to_json(g)},
            {"invariants", to_json(invariants(f))},
            {"descendant_invariants", to_json(invariants(g))}};
}

Json cmd_family(const Options& o, int& code) {
    auto f = form_of(o);
    Integer h = parse_integer(o.h, "h");
    GFamily fam = build_family(f, parse_prime_triple(o.primes), h);
    Json j = to_json(fam);
    j["schema"] = "qhl.family/1";
    code = kOk;
    return j;
}

Json cmd_local(const Options& o, int& code) {
    auto f = form_of(o);
    Integer h = parse_integer(o.h, "h");
    Json j;
    Verdict v;
    if (!o.prime.empty()) {
        Integer p = parse_prime(o.prime);
        LocalCertificate c = soluble_over_Zp(f, h, p);
        v = c.verdict;
        j = {{"schema", "qhl.local/1"}, {"form", to_json(f)}, {"h", to_json(h)}, {"certificate", to_json(c)}};
    } else {
        LocalReport r = local_everywhere(f, h);
        v = r.summary;
        j = to_json(r);
        j["schema"] = "qhl.local-report/1";
    }
    code = v == Verdict::Insoluble ? kNegative : kOk;
    return j;
}

Json cmd_search(const Options& o, int& code) {
    auto f = form_of(o);
    Integer m = parse_integer(o.m, "m");
    Rational eps = parse_rational(o.eps, "eps");
    require(eps > 0 && eps < Rational(1, 6), "eps must lie in (0, 1/6)");
    SolutionSet s = primitive_solutions_in_box(f, m, o.box, o.jobs);
    Json j = to_json(s);
    j["schema"] = "qhl.search/1";
    j["eps"] = to_json(eps);
    Integer d = discriminant(f);
    if (d != 0) {
        int i = real_signature(f);
        long bound = count_bound(i, eps);
        bool applicable = bound_applicable(d, m, eps);
        j["signature"] = i;
        j["count_bound"] = bound;
        j["bound_applicable"] = applicable;
        j["within_bound"] = static_cast<long>(s.points.size()) <= bound;
    }
    code = kOk;
    return j;
}

Json cmd_density(const Options& o, int& code) {
    Json j{{"schema", "qhl.density/1"}};
    j["delta2"] = to_json(delta2());
    if (!o.prime.empty()) {
        Integer p = parse_prime(o.prime);
        j["p"] = to_json(p);
        j["lambda"] = to_json(lambda(p));
        j["lambda_decimal"] = to_decimal(lambda(p), o.digits);
        if (p != 2) {
            j["gamma"] = to_json(gamma(p));
            j["gamma_decimal"] = to_decimal(gamma(p), o.digits);
        }
        if (p >= 5) {
            j["sigma"] = to_json(sigma(p));
            j["sigma_decimal"] = to_decimal(sigma(p), o.digits);
        }
    }
    if (o.mu) {
        Integer h = parse_integer(o.h.empty() ? "1" : o.h, "h");
        std::array<Integer, 3> primes = o.primes.empty() ? choose_primes(h) : parse_prime_triple(o.primes);
        j["h"] = to_json(h);
        j["primes"] = Json::array({to_json(primes[0]), to_json(primes[1]), to_json(primes[2])});
        j["cutoff"] = o.cutoff;
        j["mu"] = to_json(mu_lower_bound(h, primes, o.cutoff), o.digits);
    }
    code = kOk;
    return j;
}

Json cmd_witness(const Options& o, int& code) {
    Integer h = parse_integer(o.h, "h");
    WitnessReport r = verify_theorem(h, o.box, o.seed, o.jobs);
    Json j = to_json(r);
    j["seed"] = o.seed;
    j["box"] = o.box;
    if (!o.corpus.empty()) {
        std::filesystem::create_directories(o.corpus);
        std::ofstream file(std::filesystem::path(o.corpus) / ("h" + h.get_str() + "_seed" + std::to_string(o.seed) + ".json"));
        file << j.dump(2) << "\n";
    }
    code = r.verified ? kOk : kNegative;
    return j;
}

Json cmd_recheck(const Options& o, int& code) {
    std::ifstream in(o.report_path);
    require(static_cast<bool>(in), "cannot read " + o.report_path);
    Json report;
    try {
        report = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw PreconditionError(std::string("malformed JSON: ") + e.what());
    }
    RecheckResult r;
    try {
        r = recheck_witness_report(report);
    } catch (const Json::exception& e) {
        throw PreconditionError(std::string("malformed witness report: ") + e.what());
    }
    code = r.ok ? kOk : kNegative;
    return {{"schema", "qhl.recheck/1"}, {"ok", r.ok}, {"failures", r.failures}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Binary quartic Thue equations: invariants, descent, local solubility and witnesses"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    o.jobs = default_jobs();
    app.add_option("-o,--output", o.output, "write JSON here instead of stdout");
    app.add_option("--jobs", o.jobs, "worker threads (default QHL_JOBS or 1)")->check(CLI::Range(1, 1024));

    auto form_arg = [&](CLI::App* sub) {
        sub->add_option("form", o.form, "a0,a1,a2,a3,a4")->required()->expected(1, 5);
    };
    std::map<CLI::App*, Json (*)(const Options&, int&)> handlers;

    auto* inv = app.add_subcommand("invariants", "I, J, D, height and signature");
    form_arg(inv);
    handlers[inv] = cmd_invariants;

    auto* adm = app.add_subcommand("admissible", "whether (I, J) can come from an integral form");
    adm->add_option("I", o.I)->required();
    adm->add_option("J", o.J)->required();
    handlers[adm] = cmd_admissible;

    auto* spl = app.add_subcommand("split", "roots and shape of F mod p");
    form_arg(spl);
    spl->add_option("-p", o.prime)->required();
    handlers[spl] = cmd_split;

    auto* des = app.add_subcommand("descend", "quotient form at a simple root mod p");
    form_arg(des);
    des->add_option("-p", o.prime)->required();
    des->add_option("-b", o.root, "root residue or inf")->required();
    handlers[des] = cmd_descend;

    auto* fam = app.add_subcommand("family", "the 64 descended forms over three primes");
    form_arg(fam);
    fam->add_option("-h", o.h)->required();
    fam->add_option("-P", o.primes, "p1,p2,p3")->required();
    handlers[fam] = cmd_family;

    auto* loc = app.add_subcommand("local", "local solubility of F(x, y) = h");
    form_arg(loc);
    loc->add_option("-h", o.h)->required();
    loc->add_option("-p", o.prime, "single prime; default: every place");
    handlers[loc] = cmd_local;

    auto* sea = app.add_subcommand("search", "primitive solutions of F(x, y) = m in a box");
    form_arg(sea);
    sea->add_option("-m", o.m)->required();
    sea->add_option("-B", o.box)->required()->check(CLI::Range(1L, 1L << 40));
    sea->add_option("--eps", o.eps, "count bound exponent, in (0, 1/6)");
    handlers[sea] = cmd_search;

    auto* den = app.add_subcommand("density", "local densities and the Euler product bounds");
    den->add_option("-p", o.prime);
    den->add_flag("--mu", o.mu, "bound the product for h");
    den->add_option("-h", o.h);
    den->add_option("-P", o.primes, "p1,p2,p3 (default: chosen from h)");
    den->add_option("--cutoff", o.cutoff)->check(CLI::Range(std::uint64_t{49}, std::uint64_t{10'000'000}));
    den->add_option("--digits", o.digits)->check(CLI::Range(0u, 10000u));
    handlers[den] = cmd_density;

    auto* wit = app.add_subcommand("witness", "construct and verify a witness form for h");
    wit->add_option("-h", o.h)->required();
    wit->add_option("--seed", o.seed);
    o.box = 10000;
    wit->add_option("-B", o.box, "search box (default 10000)")->check(CLI::Range(1L, 1L << 20));
    wit->add_option("--corpus", o.corpus, "also store the report in this directory");
    handlers[wit] = cmd_witness;

    auto* rec = app.add_subcommand("recheck", "re-verify a witness report");
    rec->add_option("report", o.report_path)->required();
    handlers[rec] = cmd_recheck;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    int code = kOk;
    Json result;
    try {
        for (auto& [sub, handler] : handlers)
            if (sub->parsed()) result = handler(o, code);
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << "\n";
        return kUsage;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInternal;
    }

    std::string text = result.dump(2) + "\n";
    if (o.output.empty()) {
        out << text;
    } else {
        std::ofstream file(o.output);
        if (!file) {
            err << "cannot write " << o.output << "\n";
            return kUsage;
        }
        file << text;
    }
    return code;
}

}  // namespace qhl
