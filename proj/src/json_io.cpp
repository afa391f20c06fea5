#include "qhl/json_io.hpp"

namespace qhl {

namespace {

Json strings(const std::vector<Integer>& v) {
    Json out = Json::array();
    for (const auto& n : v) out.push_back(to_json(n));
    return out;
}

Json line_json(const LinearForm& l) { return Json::array({to_json(l.u), to_json(l.v)}); }

std::string path_string(const std::array<DescentLabel, 3>& p) {
    return to_string(p[0]) + "/" + to_string(p[1]) + "/" + to_string(p[2]);
}

}  // namespace

Json to_json(const Integer& n) { return n.get_str(); }

Json to_json(const Rational& q) { return q.get_str(); }

Json to_json(const BinaryQuarticForm& f) {
    Json out = Json::array();
    for (const auto& c : f.a) out.push_back(to_json(c));
    return out;
}

Json to_json(const IntegerMatrix2x2& m) {
    return Json::array({Json::array({to_json(m.a), to_json(m.b)}), Json::array({to_json(m.c), to_json(m.d)})});
}

Json to_json(const Point& p) { return Json::array({to_json(p.first), to_json(p.second)}); }

Json to_json(const InvariantData& d) {
    Json out{{"I", to_json(d.I)}, {"J", to_json(d.J)}, {"D", to_json(d.D)}, {"H", to_json(d.H)}};
    out["i"] = d.signature ? Json(*d.signature) : Json(nullptr);
    return out;
}

Json to_json(const ProjectiveRoot& r) { return to_string(r); }

Json to_json(const SplitData& s) {
    Json roots = Json::array();
    for (const auto& r : s.roots) roots.push_back(to_json(r));
    return {{"p", to_json(s.p)}, {"m0", to_json(s.m0)}, {"roots", roots}};
}

Json to_json(const LocalCertificate& c) {
    Json out{{"place", c.prime ? to_json(*c.prime) : Json("inf")},
             {"verdict", to_string(c.verdict)},
             {"method", c.method},
             {"scale", c.scale},
             {"precision", c.precision},
             {"derivative_valuation", c.derivative_valuation},
             {"depth", c.depth},
             {"nodes", c.nodes}};
    out["point"] = c.point ? to_json(*c.point) : Json(nullptr);
    return out;
}

Json to_json(const LocalReport& r) {
    Json certs = Json::array();
    for (const auto& c : r.certificates) certs.push_back(to_json(c));
    const auto& lp = r.large_primes;
    return {{"form", to_json(r.form)},
            {"h", to_json(r.h)},
            {"locally_soluble_everywhere", r.summary == Verdict::Soluble},
            {"summary", to_string(r.summary)},
            {"certificates", certs},
            {"large_primes",
             {{"sextic_content", to_json(lp.sextic_content)},
              {"checked", strings(lp.checked)},
              {"hasse_weil_min_at_53", lp.hasse_weil_min_at_53},
              {"argument", lp.argument}}}};
}

Json to_json(const SolutionSet& s) {
    Json pts = Json::array();
    for (const auto& p : s.points) pts.push_back(to_json(p));
    return {{"form", to_json(s.form)}, {"m", to_json(s.m)}, {"box", s.box}, {"count", s.points.size()}, {"points", pts}};
}

Json to_json(const GFamily& f) {
    Json members = Json::array();
    for (const auto& m : f.members) members.push_back({{"path", path_string(m.path)}, {"form", to_json(m.form)}});
    return {{"h", to_json(f.h)},
            {"primes", strings({f.primes[0], f.primes[1], f.primes[2]})},
            {"parent", to_json(f.parent)},
            {"members", members}};
}

Json to_json(const CorrespondenceReport& r) {
    Json parent = Json::array();
    for (const auto& p : r.parent_solutions) parent.push_back(to_json(p));
    return {{"target", to_json(r.target)},
            {"box", r.box},
            {"parent_solutions", parent},
            {"member_counts", r.member_counts},
            {"lifted", r.lifted},
            {"pushed_in_box", r.pushed_in_box},
            {"pushed_outside_box", r.pushed_outside_box},
            {"mismatches", r.mismatches},
            {"bijective", r.bijective}};
}

Json to_json(const DensityInterval& d, unsigned digits) {
    return {{"lower", to_json(d.lower)},
            {"upper", to_json(d.upper)},
            {"lower_decimal", to_decimal(d.lower, digits)},
            {"upper_decimal", to_decimal(d.upper, digits)}};
}

Json to_json(const WitnessSpec& s) {
    Json conds = Json::array();
    for (const auto& c : s.conditions) {
        Json roots = Json::array();
        for (const auto& r : c.roots) roots.push_back(to_json(r));
        Json j{{"modulus", to_json(c.modulus)},
               {"shape", c.shape},
               {"residues", strings({c.residues.begin(), c.residues.end()})},
               {"c", to_json(c.c)},
               {"roots", roots}};
        if (c.shape != "split") j["lines"] = Json::array({line_json(c.lines[0]), line_json(c.lines[1])});
        conds.push_back(j);
    }
    return {{"h", to_json(s.h)},
            {"primes", strings({s.primes[0], s.primes[1], s.primes[2]})},
            {"modulus", to_json(s.modulus)},
            {"conditions", conds},
            {"sign", s.sign},
            {"threshold", to_json(s.threshold)},
            {"eps", to_json(s.eps)},
            {"seed", s.seed},
            {"attempts", s.attempts}};
}

Json to_json(const WitnessChecks& c) {
    auto pairs = [](const std::vector<std::pair<Integer, bool>>& v) {
        Json out = Json::array();
        for (const auto& [p, ok] : v) out.push_back({{"p", to_json(p)}, {"ok", ok}});
        return out;
    };
    return {{"all", c.all()},
            {"primitive", c.primitive},
            {"irreducible", c.irreducible},
            {"irreducibility_method", c.irreducibility_method},
            {"maximal", c.maximal},
            {"maximality_filter", to_json(c.maximality_filter)},
            {"trivial_stabilizer", c.trivial_stabilizer},
            {"stabilizer_bits", c.stabilizer_bits},
            {"discriminant_above_threshold", c.discriminant_large},
            {"bound_applicable", c.bound_applicable},
            {"splits", Json::array({c.splits[0], c.splits[1], c.splits[2]})},
            {"shapes", pairs(c.shapes)},
            {"sextic_content", to_json(c.sextic_content)},
            {"sextic_content_factored", c.sextic_content_factored},
            {"non_square_class", pairs(c.non_square_class)},
            {"sign", c.sign}};
}

Json to_json(const WitnessReport& r) {
    Json members = Json::array();
    for (std::size_t j = 0; j < r.family.members.size(); ++j) {
        const auto& m = r.family.members[j];
        members.push_back({{"index", j},
                           {"path", path_string(m.path)},
                           {"form", to_json(m.form)},
                           {"local", to_json(r.member_local[j])},
                           {"solutions", to_json(r.member_solutions[j])}});
    }
    return {{"schema", kWitnessSchema},
            {"h", to_json(r.witness.spec.h)},
            {"form", to_json(r.witness.form)},
            {"spec", to_json(r.witness.spec)},
            {"checks", to_json(r.witness.checks)},
            {"invariants", to_json(r.invariants)},
            {"primes", strings({r.family.primes[0], r.family.primes[1], r.family.primes[2]})},
            {"parent_local", to_json(r.parent_local)},
            {"parent_solutions", to_json(r.parent_solutions)},
            {"members", members},
            {"correspondence", to_json(r.correspondence)},
            {"signature", r.signature},
            {"count_bound", r.count_bound},
            {"empty_members", r.empty_members},
            {"required_empty", r.required_empty},
            {"members_locally_soluble", r.members_locally_soluble},
            {"within_bound", r.within_bound},
            {"enough_empty", r.enough_empty},
            {"verified", r.verified}};
}

Integer integer_from_json(const Json& j) {
    require(j.is_string(), "integer fields must be decimal strings");
    Integer n;
    require(n.set_str(j.get<std::string>(), 10) == 0, "malformed integer " + j.get<std::string>());
    return n;
}

Rational rational_from_json(const Json& j) {
    require(j.is_string(), "rational fields must be strings");
    Rational q;
    require(q.set_str(j.get<std::string>(), 10) == 0, "malformed rational " + j.get<std::string>());
    require(q.get_den() != 0, "zero denominator");
    q.canonicalize();
    return q;
}

BinaryQuarticForm form_from_json(const Json& j) {
    require(j.is_array() && j.size() == 5, "a form is an array of five integers");
    BinaryQuarticForm f;
    for (std::size_t i = 0; i < 5; ++i) f[i] = integer_from_json(j[i]);
    return f;
}

Point point_from_json(const Json& j) {
    require(j.is_array() && j.size() == 2, "a point is an array of two integers");
    return {integer_from_json(j[0]), integer_from_json(j[1])};
}

LocalCertificate certificate_from_json(const Json& j) {
    LocalCertificate c;
    if (j.at("place") != "inf") c.prime = integer_from_json(j.at("place"));
    std::string v = j.at("verdict");
    c.verdict = v == to_string(Verdict::Soluble) ? Verdict::Soluble
                : v == to_string(Verdict::Insoluble) ? Verdict::Insoluble
                                                     : Verdict::Unknown;
    c.method = j.at("method");
    if (!j.at("point").is_null()) c.point = point_from_json(j.at("point"));
    c.scale = j.at("scale");
    c.precision = j.at("precision");
    c.derivative_valuation = j.at("derivative_valuation");
    c.depth = j.at("depth");
    c.nodes = j.at("nodes");
    return c;
}

namespace {

ProjectiveRoot root_from_json(const Json& j) {
    std::string s = j;
    if (s == "inf") return ProjectiveRoot::infinity();
    return ProjectiveRoot::finite(integer_from_json(j));
}

}  // namespace

WitnessSpec witness_spec_from_json(const Json& j) {
    WitnessSpec s;
    s.h = integer_from_json(j.at("h"));
    for (std::size_t i = 0; i < 3; ++i) s.primes[i] = integer_from_json(j.at("primes").at(i));
    s.modulus = integer_from_json(j.at("modulus"));
    for (const auto& c : j.at("conditions")) {
        ResidueCondition rc;
        rc.modulus = integer_from_json(c.at("modulus"));
        rc.shape = c.at("shape");
        for (std::size_t i = 0; i < 5; ++i) rc.residues[i] = integer_from_json(c.at("residues").at(i));
        rc.c = integer_from_json(c.at("c"));
        for (const auto& r : c.at("roots")) rc.roots.push_back(root_from_json(r));
        if (c.contains("lines"))
            for (std::size_t i = 0; i < 2; ++i)
                rc.lines[i] = {integer_from_json(c["lines"][i][0]), integer_from_json(c["lines"][i][1])};
        s.conditions.push_back(rc);
    }
    s.sign = j.at("sign");
    s.threshold = rational_from_json(j.at("threshold"));
    s.eps = rational_from_json(j.at("eps"));
    s.seed = j.at("seed");
    s.attempts = j.at("attempts");
    return s;
}

RecheckResult recheck_witness_report(const Json& report) {
    RecheckResult r;
    auto fail = [&](const std::string& what) {
        r.ok = false;
        r.failures.push_back(what);
    };
    require(report.value("schema", "") == kWitnessSchema, "not a witness report");
    WitnessSpec spec = witness_spec_from_json(report.at("spec"));
    BinaryQuarticForm f = form_from_json(report.at("form"));
    Integer h = spec.h;
    if (spec.primes != choose_primes(h)) fail("primes are not the three smallest primes > 4 coprime to h");
    if (spec.threshold != discriminant_threshold(spec.primes)) fail("threshold");
    Integer m0 = 1;
    for (const auto& c : spec.conditions) m0 *= c.modulus;
    if (m0 != spec.modulus) fail("modulus is not the product of the condition moduli");
    for (const auto& c : spec.conditions) {
        for (std::size_t i = 0; i < 5; ++i)
            if (mod(f[i], c.modulus) != c.residues[i]) fail("residue mod " + c.modulus.get_str());
    }
    WitnessChecks checks = check_witness(spec, f);
    if (!checks.all()) fail("check failed: " + checks.first_failure());

    GFamily family;
    try {
        family = build_family(f, spec.primes, h);
    } catch (const PreconditionError& e) {
        fail(std::string("family: ") + e.what());
        return r;
    }
    const auto& members = report.at("members");
    if (members.size() != family.members.size()) fail("member count");
    long empty = 0;
    for (std::size_t j = 0; j < family.members.size() && j < members.size(); ++j) {
        const auto& mj = members[j];
        BinaryQuarticForm g = form_from_json(mj.at("form"));
        if (g != family.members[j].form) fail("member " + std::to_string(j) + " form");
        const auto& local = mj.at("local");
        if (!local.at("locally_soluble_everywhere").get<bool>()) fail("member " + std::to_string(j) + " not locally soluble");
        for (const auto& c : local.at("certificates"))
            if (!verify_certificate(g, h, certificate_from_json(c)))
                fail("member " + std::to_string(j) + " certificate at " + c.at("place").dump());
        const auto& sols = mj.at("solutions");
        for (const auto& p : sols.at("points")) {
            Point q = point_from_json(p);
            if (g(q.first, q.second) != h || gcd(q.first, q.second) != 1) fail("member solution");
        }
        if (sols.at("points").empty()) ++empty;
    }
    Integer m = h * spec.primes[0] * spec.primes[1] * spec.primes[2];
    const auto& parent = report.at("parent_solutions");
    if (integer_from_json(parent.at("m")) != m) fail("parent target");
    long found = 0;
    for (const auto& p : parent.at("points")) {
        Point q = point_from_json(p);
        if (f(q.first, q.second) != m || gcd(q.first, q.second) != 1) fail("parent solution");
        ++found;
    }
    int signature = real_signature(f);
    long bound = count_bound(signature, spec.eps);
    if (report.at("signature").get<int>() != signature) fail("signature");
    if (report.at("count_bound").get<long>() != bound) fail("count bound");
    if (found > bound) fail("parent solutions exceed the bound");
    if (empty < 64 - bound) fail("too few members without solutions");
    return r;
}

}  // namespace qhl
