#include "freesl/freesl.h"

#include "freesl/error.hpp"
#include "freesl/json_io.hpp"

#include <cstdlib>
#include <cstring>
#include <string>

struct freesl_spec {
    freesl::ExpModuleSpec value;
};

struct freesl_module {
    freesl::FreeModule value;
};

namespace {

using namespace freesl;

thread_local std::string last_error;

template <class Fn>
freesl_status guarded(Fn&& fn)
{
    try {
        last_error.clear();
        fn();
        return FREESL_OK;
    } catch (const Error& e) {
        last_error = e.what();
        switch (e.kind()) {
        case ErrorKind::GuardBand:
            return FREESL_ERR_GUARD;
        case ErrorKind::Internal:
            return FREESL_ERR_INTERNAL;
        default:
            return FREESL_ERR_INPUT;
        }
    } catch (const nlohmann::json::exception& e) {
        last_error = std::string("JSON error: ") + e.what();
        return FREESL_ERR_INPUT;
    } catch (const std::exception& e) {
        last_error = e.what();
        return FREESL_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(const Json& j, char** out) { *out = dup_string(j.dump(2) + "\n"); }

void need(const void* p)
{
    if (!p)
        throw Error(ErrorKind::Domain, "null argument");
}

Json residues_json(const std::vector<std::size_t>& idx, const std::vector<int>& k)
{
    Json out = Json::array();
    for (std::size_t i : idx) {
        Json r = Json::array();
        for (int v : residue_at(i, k))
            r.push_back(v);
        out.push_back(r);
    }
    return out;
}

std::size_t default_truncation(std::size_t m) { return m <= 2 ? 12 : 8; }

} // namespace

extern "C" {

const char* freesl_last_error(void) { return last_error.c_str(); }

const char* freesl_version(void) { return "1.0.0"; }

void freesl_string_free(char* s) { std::free(s); }

freesl_status freesl_spec_parse(const char* json, freesl_spec** out)
{
    if (!json || !out)
        return FREESL_ERR_NULL;
    return guarded([&] { *out = new freesl_spec{spec_from_json(Json::parse(json))}; });
}

freesl_status freesl_spec_to_json(const freesl_spec* spec, char** out)
{
    if (!spec || !out)
        return FREESL_ERR_NULL;
    return guarded([&] { emit(to_json(spec->value), out); });
}

void freesl_spec_free(freesl_spec* spec) { delete spec; }

freesl_status freesl_module_parse(const char* json, freesl_module** out)
{
    if (!json || !out)
        return FREESL_ERR_NULL;
    return guarded([&] {
        const Json j = Json::parse(json);
        if (looks_like_spec(j))
            *out = new freesl_module{realize(spec_from_json(j))};
        else
            *out = new freesl_module{module_from_json(j)};
    });
}

freesl_status freesl_module_to_json(const freesl_module* mod, char** out)
{
    if (!mod || !out)
        return FREESL_ERR_NULL;
    return guarded([&] { emit(to_json(mod->value), out); });
}

void freesl_module_free(freesl_module* mod) { delete mod; }

freesl_status freesl_realize(const freesl_spec* spec, freesl_module** out)
{
    if (!spec || !out)
        return FREESL_ERR_NULL;
    return guarded([&] { *out = new freesl_module{realize(spec->value)}; });
}

freesl_status freesl_dual(const freesl_module* mod, freesl_module** out)
{
    if (!mod || !out)
        return FREESL_ERR_NULL;
    return guarded([&] { *out = new freesl_module{dual(mod->value)}; });
}

freesl_status freesl_verify(const freesl_module* mod, char** report, int* ok)
{
    if (!mod || !report || !ok)
        return FREESL_ERR_NULL;
    return guarded([&] {
        const RelationReport r = verify_relations(mod->value);
        *ok = r.ok() ? 1 : 0;
        emit(to_json(r), report);
    });
}

freesl_status freesl_decompose(const freesl_spec* spec, char** report, int* ok)
{
    if (!spec || !report || !ok)
        return FREESL_ERR_NULL;
    return guarded([&] {
        const ExpModuleSpec& s = spec->value;
        const FreeModule mod = realize(s);
        const OrbitPartition part = orbit_partition(s);
        const auto comps = orbit_split(mod);
        bool good = comps.size() == static_cast<std::size_t>(part.s);
        Json classes = Json::array();
        for (int p = 0; p < part.s; ++p) {
            const auto& even = part.classes[static_cast<std::size_t>(p)];
            const auto& odd = part.shadow[static_cast<std::size_t>(p)];
            good = good && even.size() == s.K() / static_cast<std::size_t>(part.s);
            const FreeModule sm = summand(s, p);
            bool matches = false;
            for (const auto& c : comps)
                if (c.even_labels == even)
                    matches = c.odd_labels == odd && c.module == sm;
            good = good && matches;
            classes.push_back({{"p", p},
                               {"even", residues_json(even, s.k)},
                               {"odd", residues_json(odd, s.k)},
                               {"summand_matches_component", matches},
                               {"summand", to_json(sm)}});
        }
        const bool reassembled = reassemble(mod.m(), mod.half_rank(), comps) == mod;
        good = good && reassembled;
        *ok = good ? 1 : 0;
        emit({{"s", part.s},
              {"K", s.K()},
              {"components", comps.size()},
              {"reassembly_matches", reassembled},
              {"classes", classes}},
             report);
    });
}

freesl_status freesl_endo(const freesl_spec* spec, unsigned degree, char** report, int* ok)
{
    if (!spec || !report || !ok)
        return FREESL_ERR_NULL;
    return guarded([&] {
        const ExpModuleSpec& s = spec->value;
        const FreeModule mod = realize(s);
        const HomBasis basis = solve_hom(mod, mod, degree);
        const auto idem = count_idempotents(degree == 0 ? basis : solve_hom(mod, mod, 0));
        const std::size_t sv = static_cast<std::size_t>(s.s());
        // for m = 1 the endomorphisms need not be diagonal, so there is nothing to fit
        const auto offset = s.m >= 2 ? fitted_odd_offset(s, basis) : std::nullopt;
        *ok = (basis.dim() == sv * (degree + 1) && idem == (std::size_t{1} << sv)) ? 1 : 0;
        emit({{"D", degree},
              {"dim", basis.dim()},
              {"expected_dim", sv * (degree + 1)},
              {"s", sv},
              {"idempotents", idem ? Json(*idem) : Json(nullptr)},
              {"indecomposable", indecomposable(s)},
              {"odd_block_offset", offset ? Json(to_string(*offset)) : Json(nullptr)}},
             report);
    });
}

freesl_status freesl_iso(const freesl_spec* x, const freesl_spec* y, unsigned degree, uint64_t seed, char** report,
                         int* ok)
{
    if (!x || !y || !report || !ok)
        return FREESL_ERR_NULL;
    return guarded([&] {
        const IsoVerdict v = iso_exp(x->value, y->value);
        Json support = nullptr;
        if (v.witness_support) {
            support = Json::array();
            for (std::size_t i : *v.witness_support)
                support.push_back(i + 1);
        }
        Json generic = nullptr;
        *ok = 1;
        if (x->value.K() == y->value.K() && x->value.K() <= 12) {
            const auto w = iso_generic(realize(x->value), realize(y->value), degree, seed);
            generic = {{"witness_found", w.has_value()}, {"degree", w ? Json(w->degree) : Json(nullptr)}};
            if (w && !v.isomorphic)
                *ok = 0; // an explicit isomorphism contradicts the criterion
        }
        emit({{"isomorphic", v.isomorphic},
              {"witness_support", support},
              {"method", "theorem"},
              {"D", degree},
              {"generic", generic}},
             report);
    });
}

freesl_status freesl_oracle(const freesl_spec* spec, unsigned trunc, char** report, int* ok)
{
    if (!spec || !report || !ok)
        return FREESL_ERR_NULL;
    return guarded([&] {
        const ExpModuleSpec& s = spec->value;
        const std::size_t N = trunc ? trunc : default_truncation(s.m);
        const TruncReport rel = relation_check_truncated(g_from_spec(s), s.S, N);
        const CensusReport census = uh_free_census(s, N);
        const bool matrix_ok = verify_relations(realize(s)).ok();
        Json intertwiner = nullptr;
        bool inter_ok = true;
        if (s.m == 1) {
            inter_ok = phi_sl11_check(s.a[0], s.k[0], s.S, N);
            intertwiner = {{"map", "sl11"}, {"passed", inter_ok}};
        } else if (s.K() == 1) {
            inter_ok = theta_check(s.a, s.S, N);
            intertwiner = {{"map", "theta"}, {"passed", inter_ok}};
        }
        *ok = (rel.ok() && census.recovered && matrix_ok && inter_ok &&
               census.even_classes == s.K() && census.odd_classes == s.K())
                  ? 1
                  : 0;
        emit({{"N", N},
              {"relations", to_json(rel)},
              {"census", to_json(census)},
              {"matrix_relations_pass", matrix_ok},
              {"intertwiner", intertwiner}},
             report);
    });
}

freesl_status freesl_classify(const char* specs_json, char** report, int* ok)
{
    if (!specs_json || !report || !ok)
        return FREESL_ERR_NULL;
    return guarded([&] {
        const Json j = Json::parse(specs_json);
        if (!j.is_array() || j.empty())
            throw Error(ErrorKind::Parse, "classify expects a nonempty JSON list of specs");
        std::vector<ExpModuleSpec> specs;
        for (const auto& e : j)
            specs.push_back(spec_from_json(e));
        const Classification c = classify(specs);
        Json classes = Json::array(), canonical = Json::array();
        for (const auto& cls : c.classes) {
            Json ids = Json::array();
            for (std::size_t i : cls)
                ids.push_back(i + 1);
            classes.push_back(ids);
        }
        for (const auto& s : c.canonical)
            canonical.push_back(to_json(s));
        *ok = 1;
        emit({{"classes", classes}, {"canonical", canonical}}, report);
    });
}

} // extern "C"
