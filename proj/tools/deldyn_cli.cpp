// Command-line frontend.  All work happens behind the C API; this file only
// parses arguments, moves bytes, and maps statuses to exit codes:
//   0  success (or: every instance verified)
//   1  negative result (no isomorphism, a counterexample, a failed invariant)
//   2  malformed input
//
// Campaign progress goes to stderr; reports go to stdout.

#include "deldyn.h"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

struct DiagramHandle {
    deldyn_diagram* d = nullptr;
    ~DiagramHandle() { deldyn_diagram_free(d); }
};

int print_error(int status) {
    std::cerr << "error: " << deldyn_last_error() << "\n";
    return status == DELDYN_ERR_INPUT ? 2 : 1;
}

void print_report(char* s) {
    std::fputs(s, stdout);
    deldyn_string_free(s);
}

// Returns exit code 0, or 2 after printing a diagnostic.
int load_diagram(const std::string& path, DiagramHandle& h) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    int rc = deldyn_diagram_parse(text.c_str(), &h.d);
    if (rc != DELDYN_OK) {
        std::cerr << path << ": " << deldyn_last_error() << "\n";
        return 2;
    }
    return 0;
}

void progress(long long done, long long total, void*) {
    long long step = total > 100 ? total / 100 : 1;
    if (done % step == 0 || done == total)
        std::fprintf(stderr, "progress: %lld/%lld frames\n", done, total);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Galois-equivariant Dynkin diagram toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    int rc = 0;

    auto* table = app.add_subcommand("table", "Special-node pairing-label table");
    int table_rank = 8;
    table->add_option("--max-rank", table_rank, "Largest rank to include")
        ->capture_default_str();
    table->callback([&] {
        char* out = nullptr;
        int st = deldyn_table(table_rank, format == "json", &out);
        if (st != DELDYN_OK) {
            rc = print_error(st);
            return;
        }
        print_report(out);
    });

    auto* classify = app.add_subcommand("classify", "Classify a diagram file");
    std::string classify_file;
    classify->add_option("file", classify_file, "Diagram file")->required();
    classify->callback([&] {
        DiagramHandle h;
        if ((rc = load_diagram(classify_file, h)) != 0) return;
        char* out = nullptr;
        int st = deldyn_classify(h.d, format == "json", &out);
        if (st != DELDYN_OK) {
            rc = print_error(st);
            return;
        }
        print_report(out);
    });

    auto* special = app.add_subcommand("special", "Special nodes of a simple type");
    auto* oppinv = app.add_subcommand("oppinv", "Opposition involution of a simple type");
    std::string type_tag;
    int type_rank = 0;
    for (auto* sub : {special, oppinv}) {
        sub->add_option("type", type_tag, "Family letter A..G")->required();
        sub->add_option("rank", type_rank, "Rank")->required();
    }
    auto run_type_query = [&](auto fn) {
        std::string name = type_tag + std::to_string(type_rank);
        char* out = nullptr;
        int st = fn(name.c_str(), format == "json", &out);
        if (st != DELDYN_OK) {
            rc = print_error(st);
            return;
        }
        print_report(out);
    };
    special->callback([&] { run_type_query(deldyn_special); });
    oppinv->callback([&] { run_type_query(deldyn_oppinv); });

    auto* isom = app.add_subcommand("isom", "Equivariant mu-isomorphism search");
    std::string isom_file1, isom_file2, isom_local;
    isom->add_option("file1", isom_file1, "First diagram file")->required();
    isom->add_option("file2", isom_file2, "Second diagram file")->required();
    isom->add_option("--local", isom_local,
                     "Restrict to the cyclic subgroup generated by this permutation "
                     "(cycle notation on the first diagram's nodes)");
    isom->callback([&] {
        DiagramHandle h1, h2;
        if ((rc = load_diagram(isom_file1, h1)) != 0) return;
        if ((rc = load_diagram(isom_file2, h2)) != 0) return;
        char* out = nullptr;
        int found = 0;
        int st = deldyn_isom(h1.d, h2.d, isom_local.empty() ? nullptr : isom_local.c_str(),
                             format == "json", &out, &found);
        if (st != DELDYN_OK) {
            rc = print_error(st);
            return;
        }
        print_report(out);
        rc = found ? 0 : 1;
    });

    auto* verify = app.add_subcommand("verify-local-global",
                                      "Exhaustive local-global verification campaign");
    long long v_order = 24;
    int v_rank = 4, v_comps = 3, v_jobs = 1;
    std::string v_types = "ABCD";
    verify->add_option("--max-order", v_order, "Largest acting group order")
        ->capture_default_str();
    verify->add_option("--max-rank", v_rank, "Largest component rank")->capture_default_str();
    verify->add_option("--types", v_types, "Component families to sweep (subset of ABCD)")
        ->capture_default_str();
    verify->add_option("--max-components", v_comps, "Largest component count")
        ->capture_default_str();
    verify->add_option("--jobs", v_jobs, "Worker threads")->capture_default_str();
    verify->callback([&] {
        char* out = nullptr;
        int found = 0;
        int st = deldyn_campaign(v_order, v_rank, v_types.c_str(), v_comps, v_jobs, progress,
                                 nullptr, format == "json", &out, &found);
        if (st != DELDYN_OK) {
            rc = print_error(st);
            return;
        }
        print_report(out);
        rc = found ? 1 : 0;
    });

    auto* deligne = app.add_subcommand("deligne", "Abelian-variety dimension pipeline");
    std::string deligne_file;
    long long deligne_n = 1;
    deligne->add_option("file", deligne_file, "Diagram file (cover/phi optional)")->required();
    deligne->add_option("--n", deligne_n, "Multiplicity of the standard summand")
        ->capture_default_str();
    deligne->callback([&] {
        DiagramHandle h;
        if ((rc = load_diagram(deligne_file, h)) != 0) return;
        char* out = nullptr;
        int ok = 0;
        int st = deldyn_deligne(h.d, deligne_n, format == "json", &out, &ok);
        if (st != DELDYN_OK) {
            rc = print_error(st);
            return;
        }
        print_report(out);
        rc = ok ? 0 : 1;
    });

    auto* hyper = app.add_subcommand("hyperadjoint", "Adjoint iteration of an object spec");
    std::string hyper_spec;
    hyper->add_option("spec", hyper_spec, "Object spec, e.g. A1+A1+T2:8")->required();
    hyper->callback([&] {
        char* out = nullptr;
        int st = deldyn_hyperadjoint(hyper_spec.c_str(), format == "json", &out);
        if (st != DELDYN_OK) {
            rc = print_error(st);
            return;
        }
        print_report(out);
    });

    auto* goursat = app.add_subcommand("goursat", "Goursat sweep over the named-group zoo");
    int g_order = 12;
    goursat->add_option("--max-order", g_order, "Largest factor group order")
        ->capture_default_str();
    goursat->callback([&] {
        char* out = nullptr;
        int ok = 0;
        int st = deldyn_goursat(g_order, format == "json", &out, &ok);
        if (st != DELDYN_OK) {
            rc = print_error(st);
            return;
        }
        print_report(out);
        rc = ok ? 0 : 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return rc;
}
