#include "freesl/json_io.hpp"

#include "freesl/error.hpp"

namespace freesl {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        fail(ErrorKind::Parse, std::string("missing field '") + key + "'");
    return j.at(key);
}

Rational rational_field(const Json& j)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(Integer(std::to_string(j.get<long long>())));
    fail(ErrorKind::Parse, "rational values must be strings or integers");
}

std::size_t index_field(const Json& j, std::size_t upper, const char* what)
{
    if (!j.is_number_integer())
        fail(ErrorKind::Parse, std::string(what) + " must be an integer");
    const long long v = j.get<long long>();
    if (v < 1 || static_cast<std::size_t>(v) > upper)
        fail(ErrorKind::Parse, std::string(what) + " out of range");
    return static_cast<std::size_t>(v - 1);
}

} // namespace

Json to_json(const Poly& p)
{
    Json out = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json ex = Json::array();
        for (int v : e)
            ex.push_back(v);
        out.push_back(Json::array({ex, to_string(c)}));
    }
    return out;
}

Poly poly_from_json(const Json& j, std::size_t nvars)
{
    if (!j.is_array())
        fail(ErrorKind::Parse, "polynomial must be a list of [exponents, coefficient] pairs");
    std::vector<Poly::Term> terms;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_array() || t[0].size() != nvars)
            fail(ErrorKind::Parse, "malformed polynomial term");
        Exponents e;
        for (const auto& v : t[0]) {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                fail(ErrorKind::Parse, "exponents must be non-negative integers");
            e.push_back(static_cast<int>(v.get<long long>()));
        }
        terms.emplace_back(std::move(e), rational_field(t[1]));
    }
    return Poly::from_terms(nvars, std::move(terms));
}

Json to_json(const Gpm& g)
{
    Json perm = Json::array(), entries = Json::array();
    for (std::size_t j = 0; j < g.size(); ++j) {
        perm.push_back(g.perm()[j] + 1);
        entries.push_back({{"coef", to_string(g.entries()[j].coef)}, {"deg", g.entries()[j].deg}});
    }
    return {{"size", g.size()}, {"var", g.var() + 1}, {"perm", perm}, {"entries", entries}};
}

Gpm gpm_from_json(const Json& j, std::size_t nvars)
{
    const Json& size = field(j, "size");
    if (!size.is_number_integer() || size.get<long long>() < 1)
        fail(ErrorKind::Parse, "GPM size must be a positive integer");
    const std::size_t n = static_cast<std::size_t>(size.get<long long>());
    const std::size_t var = index_field(field(j, "var"), nvars, "GPM variable");
    const Json& perm = field(j, "perm");
    const Json& entries = field(j, "entries");
    if (!perm.is_array() || perm.size() != n || !entries.is_array() || entries.size() != n)
        fail(ErrorKind::Parse, "GPM perm and entries must have length size");
    Permutation p;
    std::vector<GpmEntry> es;
    for (std::size_t t = 0; t < n; ++t) {
        p.push_back(index_field(perm[t], n, "GPM permutation value"));
        const Json& deg = field(entries[t], "deg");
        if (!deg.is_number_integer())
            fail(ErrorKind::Parse, "GPM entry degree must be 0 or 1");
        es.push_back({rational_field(field(entries[t], "coef")), static_cast<int>(deg.get<long long>())});
    }
    return Gpm(nvars, var, std::move(p), std::move(es));
}

Json to_json(const FreeModule& mod)
{
    Json pairs = Json::array();
    for (const auto& p : mod.pairs())
        pairs.push_back({{"A", to_json(p.a)}, {"Acomp", to_json(p.acomp)}});
    return {{"m", mod.m()}, {"l", mod.half_rank()}, {"pairs", pairs}};
}

FreeModule module_from_json(const Json& j)
{
    const Json& mj = field(j, "m");
    if (!mj.is_number_integer() || mj.get<long long>() < 1)
        fail(ErrorKind::Parse, "module m must be a positive integer");
    const std::size_t m = static_cast<std::size_t>(mj.get<long long>());
    const Json& pairs = field(j, "pairs");
    if (!pairs.is_array() || pairs.size() != m)
        fail(ErrorKind::Parse, "module must list m companion pairs");
    std::vector<CompanionPair> out;
    for (const auto& p : pairs)
        out.push_back({gpm_from_json(field(p, "A"), m), gpm_from_json(field(p, "Acomp"), m)});
    return FreeModule(m, std::move(out));
}

Json to_json(const ExpModuleSpec& spec)
{
    Json a = Json::array(), k = Json::array(), S = Json::array();
    for (const auto& x : spec.a)
        a.push_back(to_string(x));
    for (int x : spec.k)
        k.push_back(x);
    for (std::size_t i : spec.S)
        S.push_back(i + 1);
    return {{"m", spec.m}, {"a", a}, {"k", k}, {"S", S}};
}

bool looks_like_spec(const Json& j)
{
    return j.is_object() && j.contains("a") && j.contains("k") && j.contains("S");
}

ExpModuleSpec spec_from_json(const Json& j)
{
    ExpModuleSpec spec;
    const Json& mj = field(j, "m");
    if (!mj.is_number_integer() || mj.get<long long>() < 1)
        fail(ErrorKind::Parse, "spec m must be a positive integer");
    spec.m = static_cast<std::size_t>(mj.get<long long>());
    const Json& a = field(j, "a");
    const Json& k = field(j, "k");
    const Json& S = field(j, "S");
    if (!a.is_array() || !k.is_array() || !S.is_array())
        fail(ErrorKind::Parse, "spec fields a, k, S must be lists");
    for (const auto& x : a)
        spec.a.push_back(rational_field(x));
    for (const auto& x : k) {
        if (!x.is_number_integer())
            fail(ErrorKind::Parse, "spec exponents must be integers");
        spec.k.push_back(static_cast<int>(x.get<long long>()));
    }
    for (const auto& x : S)
        spec.S.insert(index_field(x, spec.m, "spec parity index"));
    try {
        spec.validate();
    } catch (const Error& e) {
        fail(ErrorKind::Parse, e.what());
    }
    return spec;
}

Json to_json(const PolyMatrix& mat)
{
    Json entries = Json::array();
    for (std::size_t r = 0; r < mat.rows(); ++r)
        for (const auto& [c, p] : mat.row(r))
            entries.push_back({{"row", r + 1}, {"col", c + 1}, {"poly", to_json(p)}});
    return {{"rows", mat.rows()}, {"cols", mat.cols()}, {"entries", entries}};
}

Json to_json(const RelationReport& r)
{
    Json failed = Json::array();
    for (const auto& f : r.failed)
        failed.push_back({{"X", f.x.name()}, {"Y", f.y.name()}, {"residual_nonzero_terms", f.residual_nonzero_terms}});
    return {{"checked", r.checked}, {"failed", failed}};
}

Json to_json(const TruncReport& r)
{
    Json failed = Json::array();
    for (const auto& f : r.failed)
        failed.push_back({{"X", f.x.name()}, {"Y", f.y.name()}, {"failing_vectors", f.failing_vectors}});
    return {{"basis_order", "parity-major, lexicographic exponents"},
            {"basis_size", r.basis_size},
            {"delta_max", r.delta_max},
            {"guard_vectors", r.guard_vectors},
            {"checked_vectors", r.checked_vectors},
            {"relation_checks", r.relation_checks},
            {"audit_violations", r.audit_violations},
            {"failed", failed}};
}

Json to_json(const CensusReport& r)
{
    Json classes = Json::array();
    for (const auto& c : r.classes) {
        Json res = Json::array();
        for (int v : c.r)
            res.push_back(v);
        classes.push_back({{"residue", res},
                           {"parity", c.eps},
                           {"span_rank", c.span_rank},
                           {"class_size", c.class_size},
                           {"closed", c.closed}});
    }
    return {{"even_classes", r.even_classes}, {"odd_classes", r.odd_classes}, {"recovered", r.recovered},
            {"classes", classes}};
}

} // namespace freesl
