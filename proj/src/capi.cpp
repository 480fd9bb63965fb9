#include "deldyn.h"

#include "deldyn/json_io.hpp"
#include "deldyn/render.hpp"

#include <cstring>
#include <exception>
#include <new>
#include <string>

using namespace deldyn;

struct deldyn_diagram {
    ParsedDiagram rep;
};

namespace {

thread_local std::string g_last_error;

int fail_input(const std::string& msg) {
    g_last_error = msg;
    return DELDYN_ERR_INPUT;
}

int fail_internal(const std::string& msg) {
    g_last_error = msg;
    return DELDYN_ERR_INTERNAL;
}

char* copy_out(const std::string& s) {
    char* buf = new char[s.size() + 1];
    std::memcpy(buf, s.c_str(), s.size() + 1);
    return buf;
}

// Boundary guard: no exception may cross into C callers.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        return fail_internal(std::string("unexpected exception: ") + e.what());
    } catch (...) {
        return fail_internal("unexpected non-standard exception");
    }
}

int emit(const Json& j, const std::string& text, int as_json, char** out) {
    *out = copy_out(as_json ? dump_json(j) : text);
    return DELDYN_OK;
}

std::optional<SimpleType> parse_type_arg(const char* type) {
    if (!type) return std::nullopt;
    return parse_type(type);
}

}  // namespace

extern "C" {

const char* deldyn_last_error(void) { return g_last_error.c_str(); }

void deldyn_string_free(char* s) { delete[] s; }

int deldyn_diagram_parse(const char* text, deldyn_diagram** out) {
    return guarded([&] {
        if (!text || !out) return fail_input("NULL argument");
        auto res = parse_diagram_file(text);
        if (auto* err = std::get_if<std::string>(&res)) return fail_input(*err);
        *out = new deldyn_diagram{std::get<ParsedDiagram>(std::move(res))};
        return DELDYN_OK;
    });
}

void deldyn_diagram_free(deldyn_diagram* d) { delete d; }

int deldyn_diagram_serialize(const deldyn_diagram* d, char** out) {
    return guarded([&] {
        if (!d || !out) return fail_input("NULL argument");
        *out = copy_out(serialize_diagram_file(d->rep.file));
        return DELDYN_OK;
    });
}

int deldyn_table(int max_rank, int as_json, char** out) {
    return guarded([&] {
        if (!out) return fail_input("NULL argument");
        if (max_rank < 1 || max_rank > 64) return fail_input("max_rank must be in 1..64");
        Json j = table_json(max_rank);
        return emit(j, table_text(j), as_json, out);
    });
}

int deldyn_classify(const deldyn_diagram* d, int as_json, char** out) {
    return guarded([&] {
        if (!d || !out) return fail_input("NULL argument");
        Json j = classify_json(d->rep.d);
        return emit(j, classify_text(j), as_json, out);
    });
}

int deldyn_special(const char* type, int as_json, char** out) {
    return guarded([&] {
        if (!out) return fail_input("NULL argument");
        auto t = parse_type_arg(type);
        if (!t) return fail_input("invalid type '" + std::string(type ? type : "") + "'");
        Json j = special_json(*t);
        return emit(j, special_text(j), as_json, out);
    });
}

int deldyn_oppinv(const char* type, int as_json, char** out) {
    return guarded([&] {
        if (!out) return fail_input("NULL argument");
        auto t = parse_type_arg(type);
        if (!t) return fail_input("invalid type '" + std::string(type ? type : "") + "'");
        Json j = oppinv_json(*t);
        return emit(j, oppinv_text(j), as_json, out);
    });
}

int deldyn_isom(const deldyn_diagram* d1, const deldyn_diagram* d2, const char* local_cycles,
                int as_json, char** out, int* out_found) {
    return guarded([&] {
        if (!d1 || !d2 || !out || !out_found) return fail_input("NULL argument");
        std::optional<Perm> local;
        if (local_cycles) {
            auto p = parse_cycles(local_cycles, d1->rep.d.base.diagram.total_nodes);
            if (!p)
                return fail_input("--local: invalid cycle notation '" +
                                  std::string(local_cycles) + "'");
            local = *p;
        }
        auto res = isom_json(d1->rep.d, d2->rep.d, local);
        if (auto* err = std::get_if<std::string>(&res)) return fail_input(*err);
        const Json& j = std::get<Json>(res);
        *out_found = j["found"].get<bool>() ? 1 : 0;
        return emit(j, isom_text(j), as_json, out);
    });
}

int deldyn_deligne(const deldyn_diagram* d, long long multiplicity, int as_json, char** out,
                   int* out_ok) {
    return guarded([&] {
        if (!d || !out || !out_ok) return fail_input("NULL argument");
        if (multiplicity < 1) return fail_input("multiplicity must be positive");
        auto res = deligne_json(d->rep, multiplicity);
        if (auto* err = std::get_if<std::string>(&res)) return fail_input(*err);
        const Json& j = std::get<Json>(res);
        *out_ok = 1;
        for (const auto& run : j["runs"])
            if (run.contains("internal_error")) *out_ok = 0;
        return emit(j, deligne_text(j), as_json, out);
    });
}

int deldyn_hyperadjoint(const char* spec, int as_json, char** out) {
    return guarded([&] {
        if (!spec || !out) return fail_input("NULL argument");
        auto v = parse_object_spec(spec);
        if (auto* err = std::get_if<std::string>(&v)) return fail_input(*err);
        Json j = hyperadjoint_json(std::get<TannakianObject>(v));
        if (j.contains("internal_error"))
            return fail_internal(j["internal_error"].get<std::string>());
        return emit(j, hyperadjoint_text(j), as_json, out);
    });
}

int deldyn_goursat(int max_order, int as_json, char** out, int* out_ok) {
    return guarded([&] {
        if (!out || !out_ok) return fail_input("NULL argument");
        if (max_order < 1 || max_order > 12) return fail_input("max_order must be in 1..12");
        Json j = goursat_json(max_order);
        *out_ok = j["ok"].get<bool>() ? 1 : 0;
        return emit(j, goursat_text(j), as_json, out);
    });
}

int deldyn_campaign(long long max_group_order, int max_rank, const char* types,
                    int max_components, int jobs, deldyn_progress_fn progress, void* user,
                    int as_json, char** out, int* out_found_counterexample) {
    return guarded([&] {
        if (!types || !out || !out_found_counterexample) return fail_input("NULL argument");
        if (max_group_order < 1) return fail_input("max order must be positive");
        if (max_rank < 1) return fail_input("max rank must be positive");
        if (max_components < 1) return fail_input("max components must be positive");
        if (jobs < 1) return fail_input("jobs must be positive");
        std::string tags(types);
        if (tags.empty()) return fail_input("types must be a nonempty subset of \"ABCD\"");
        for (char c : tags)
            if (c != 'A' && c != 'B' && c != 'C' && c != 'D')
                return fail_input("types must be a subset of \"ABCD\"");

        CampaignOptions opts;
        opts.bounds.max_group_order = static_cast<std::size_t>(max_group_order);
        opts.bounds.max_rank = max_rank;
        opts.bounds.tags = tags;
        opts.bounds.max_components = max_components;
        opts.jobs = jobs;
        std::function<void(long long, long long)> cb;
        if (progress)
            cb = [progress, user](long long done, long long total) { progress(done, total, user); };
        CampaignResult r = run_campaign(opts, cb);
        *out_found_counterexample = r.counterexamples.empty() ? 0 : 1;
        Json j = campaign_json(r, opts.bounds);
        return emit(j, campaign_text(j), as_json, out);
    });
}

}  // extern "C"
