#include "freesl/freesl.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>

namespace {

enum Exit { Clean = 0, Failure = 1, BadInput = 2 };

struct CliError {
    int code;
    std::string message;
};

int exit_for(freesl_status st)
{
    switch (st) {
    case FREESL_OK:
        return Clean;
    case FREESL_ERR_INTERNAL:
        return Failure;
    default:
        return BadInput;
    }
}

void check(freesl_status st)
{
    if (st != FREESL_OK)
        throw CliError{exit_for(st), freesl_last_error()};
}

std::string read_input(const std::string& path)
{
    if (path == "-")
        return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw CliError{BadInput, "cannot read " + path};
    return {std::istreambuf_iterator<char>(in), {}};
}

struct SpecDeleter {
    void operator()(freesl_spec* p) const { freesl_spec_free(p); }
};
struct ModuleDeleter {
    void operator()(freesl_module* p) const { freesl_module_free(p); }
};
struct StringDeleter {
    void operator()(char* p) const { freesl_string_free(p); }
};
using SpecPtr = std::unique_ptr<freesl_spec, SpecDeleter>;
using ModulePtr = std::unique_ptr<freesl_module, ModuleDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

SpecPtr load_spec(const std::string& path)
{
    freesl_spec* s = nullptr;
    check(freesl_spec_parse(read_input(path).c_str(), &s));
    return SpecPtr(s);
}

ModulePtr load_module(const std::string& path)
{
    freesl_module* m = nullptr;
    check(freesl_module_parse(read_input(path).c_str(), &m));
    return ModulePtr(m);
}

struct Options {
    std::string input, second, out, format = "json";
    unsigned degree = 2;
    unsigned trunc = 0;
    uint64_t seed = 0;
};

void write_output(const Options& opt, const char* text)
{
    if (opt.out.empty() || opt.out == "-") {
        std::fputs(text, stdout);
        return;
    }
    std::ofstream f(opt.out, std::ios::binary);
    if (!f)
        throw CliError{BadInput, "cannot write " + opt.out};
    f << text;
}

int report(const Options& opt, freesl_status st, char* const* raw, const int* ok)
{
    StringPtr text(*raw);
    check(st);
    write_output(opt, text.get());
    return *ok ? Clean : Failure;
}

int run(const std::string& cmd, const Options& opt)
{
    char* text = nullptr;
    int ok = 0;
    const int one = 1;
    if (cmd == "realize" || cmd == "dual") {
        ModulePtr mod = load_module(opt.input);
        if (cmd == "dual") {
            freesl_module* d = nullptr;
            check(freesl_dual(mod.get(), &d));
            mod.reset(d);
        }
        return report(opt, freesl_module_to_json(mod.get(), &text), &text, &one);
    }
    if (cmd == "verify") {
        ModulePtr mod = load_module(opt.input);
        return report(opt, freesl_verify(mod.get(), &text, &ok), &text, &ok);
    }
    if (cmd == "classify")
        return report(opt, freesl_classify(read_input(opt.input).c_str(), &text, &ok), &text, &ok);

    SpecPtr spec = load_spec(opt.input);
    if (cmd == "decompose")
        return report(opt, freesl_decompose(spec.get(), &text, &ok), &text, &ok);
    if (cmd == "endo")
        return report(opt, freesl_endo(spec.get(), opt.degree, &text, &ok), &text, &ok);
    if (cmd == "oracle")
        return report(opt, freesl_oracle(spec.get(), opt.trunc, &text, &ok), &text, &ok);
    SpecPtr other = load_spec(opt.second);
    return report(opt, freesl_iso(spec.get(), other.get(), opt.degree, opt.seed, &text, &ok), &text, &ok);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Free sl(m|1)-modules: construction, verification and classification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(freesl_version()));

    Options opt;
    struct Sub {
        const char* name;
        const char* help;
        bool second;
    };
    const Sub subs[] = {
        {"realize", "realize a spec as a module", false},
        {"verify", "check the defining relations of a module", false},
        {"decompose", "split a spec's module into indecomposable summands", false},
        {"endo", "endomorphism dimension and idempotents up to a degree", false},
        {"iso", "decide whether two specs give isomorphic modules", true},
        {"dual", "dual module", false},
        {"oracle", "cross-check against the truncated Weyl superalgebra model", false},
        {"classify", "group a list of specs into isomorphism classes", false},
    };
    for (const Sub& s : subs) {
        CLI::App* sc = app.add_subcommand(s.name, s.help);
        sc->add_option("input", opt.input, "JSON file, or - for stdin")->required();
        if (s.second)
            sc->add_option("other", opt.second, "second spec JSON file")->required();
        sc->add_option("--degree", opt.degree, "polynomial degree bound")->envname("FREESL_DEGREE");
        sc->add_option("--trunc", opt.trunc, "oracle truncation (0 = default)")->envname("FREESL_TRUNC");
        sc->add_option("--seed", opt.seed, "seed for randomized witness search")->envname("FREESL_SEED");
        sc->add_option("--out", opt.out, "output file (default stdout)");
        sc->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"json"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return BadInput;
    }

    try {
        return run(app.get_subcommands().front()->get_name(), opt);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    }
}
