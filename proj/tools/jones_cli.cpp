// Command-line front end. All domain work goes through the shared library's C
// API (jones.h); this file only handles argument parsing and output rendering.

#include <jones.h>

#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
    throw CliError{code, message};
}

[[noreturn]] void fail_api(jones_status st, const std::string& what) {
    fail(st == JONES_EINVAL ? kExitUsage : kExitComputation,
         what + ": " + jones_last_error());
}

std::string fmt_double(double d) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += ch;
        }
    }
    return out;
}

std::string complex_json(double re, double im) {
    return "{\"re\":" + fmt_double(re) + ",\"im\":" + fmt_double(im) + "}";
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

// flat rows drive the csv and text renderings; json documents are assembled
// separately to keep their nesting
struct Rows {
    std::vector<std::pair<std::string, std::string>> rows;
    void add(const std::string& k, const std::string& v) { rows.emplace_back(k, v); }
    void add(const std::string& k, double v) { rows.emplace_back(k, fmt_double(v)); }
    void add(const std::string& k, long long v) { rows.emplace_back(k, std::to_string(v)); }
    void add_complex(const std::string& k, double re, double im) {
        add(k + ".re", re);
        add(k + ".im", im);
    }
};

void render(const std::string& format, const std::string& json, const Rows& rows) {
    if (format == "json") {
        std::cout << json << "\n";
    } else if (format == "csv") {
        std::cout << "field,value\n";
        for (const auto& [k, v] : rows.rows)
            std::cout << csv_quote(k) << "," << csv_quote(v) << "\n";
    } else {
        for (const auto& [k, v] : rows.rows)
            std::cout << k << ": " << v << "\n";
    }
}

struct BraidHandle {
    jones_braid* b = nullptr;
    ~BraidHandle() { jones_braid_free(b); }
};

struct PolyHandle {
    jones_poly* p = nullptr;
    ~PolyHandle() { jones_poly_free(p); }
};

std::string take_string(char* s) {
    std::string out = s ? s : "";
    jones_string_free(s);
    return out;
}

void load_braid(const std::string& inline_text, const std::string& file, BraidHandle& out) {
    std::string text = inline_text;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in)
            fail(kExitUsage, "cannot open braid file '" + file + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    if (text.empty())
        fail(kExitUsage, "no braid given (pass it inline or with --file)");
    if (jones_status st = jones_braid_parse(text.c_str(), &out.b); st != JONES_OK)
        fail_api(st, "braid parse failed");
}

std::string braid_json(const jones_braid* b) {
    std::vector<int> word(jones_braid_length(b));
    if (!word.empty())
        jones_braid_word(b, word.data(), word.size());
    std::string out = "{\"strands\":" + std::to_string(jones_braid_strands(b)) + ",\"word\":[";
    for (size_t i = 0; i < word.size(); ++i)
        out += (i ? "," : "") + std::to_string(word[i]);
    out += "]}";
    return out;
}

std::string braid_text(const jones_braid* b) {
    std::vector<int> word(jones_braid_length(b));
    if (!word.empty())
        jones_braid_word(b, word.data(), word.size());
    std::string out = std::to_string(jones_braid_strands(b)) + ":";
    for (int g : word)
        out += " " + std::to_string(g);
    return out;
}

std::uint64_t resolve_seed(CLI::Option* opt, std::uint64_t seed) {
    if (opt->count() > 0)
        return seed;
    std::random_device rd;
    const std::uint64_t derived =
        (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
    std::fprintf(stderr, "derived seed %" PRIu64 " (pass --seed to reproduce)\n", derived);
    return derived;
}

// shared assembly for bracket / jones-exact / jones-tl
void run_poly_command(const std::string& command, const std::string& braid_arg,
                      const std::string& file, const std::string& closure_name, int k,
                      int max_crossings, int max_strands, const std::string& format) {
    BraidHandle braid;
    load_braid(braid_arg, file, braid);
    const int closure = closure_name == "plat" ? JONES_CLOSURE_PLAT : JONES_CLOSURE_TRACE;

    PolyHandle poly;
    jones_status st = JONES_OK;
    if (command == "bracket")
        st = jones_bracket_poly(braid.b, closure, max_crossings, &poly.p);
    else if (command == "jones-exact")
        st = jones_exact_poly(braid.b, closure, max_crossings, &poly.p);
    else
        st = jones_tl_poly(braid.b, closure, max_strands, &poly.p);
    if (st != JONES_OK)
        fail_api(st, command + " failed");

    int writhe = 0, components = 0;
    if (jones_status ws = jones_braid_writhe(braid.b, closure, &writhe, &components);
        ws != JONES_OK)
        fail_api(ws, "writhe computation failed");

    std::string poly_json, poly_str;
    {
        char* s = nullptr;
        if (jones_poly_json(poly.p, &s) != JONES_OK)
            fail_api(JONES_EINTERNAL, "poly rendering failed");
        poly_json = take_string(s);
        if (jones_poly_str(poly.p, &s) != JONES_OK)
            fail_api(JONES_EINTERNAL, "poly rendering failed");
        poly_str = take_string(s);
    }

    std::ostringstream js;
    js << "{\"command\":\"" << command << "\",\"braid\":" << braid_json(braid.b)
       << ",\"closure\":\"" << closure_name << "\",\"writhe\":" << writhe
       << ",\"components\":" << components << ",\"polynomial\":" << poly_json
       << ",\"polynomial_str\":\"" << json_escape(poly_str) << "\"";

    Rows rows;
    rows.add("command", command);
    rows.add("braid", braid_text(braid.b));
    rows.add("closure", closure_name);
    rows.add("writhe", static_cast<long long>(writhe));
    rows.add("components", static_cast<long long>(components));
    rows.add("polynomial", poly_str);

    if (k > 0) {
        double re = 0, im = 0;
        if (jones_status es = jones_poly_eval_unit_root(poly.p, k, &re, &im); es != JONES_OK)
            fail_api(es, "evaluation failed");
        js << ",\"evaluation\":{\"k\":" << k << ",\"value\":" << complex_json(re, im) << "}";
        rows.add("evaluation.k", static_cast<long long>(k));
        rows.add_complex("evaluation.value", re, im);
    }
    js << ",\"conventions\":" << jones_conventions_json() << "}";
    render(format, js.str(), rows);
}

void run_approx(const std::string& braid_arg, const std::string& file,
                const std::string& closure_name, int k, double epsilon, double delta,
                std::uint64_t seed, const std::string& mode, const std::string& reference,
                const std::string& format) {
    BraidHandle braid;
    load_braid(braid_arg, file, braid);

    jones_approx_opts opts{};
    opts.k = k;
    opts.closure = closure_name == "plat" ? JONES_CLOSURE_PLAT : JONES_CLOSURE_TRACE;
    opts.mode = mode == "exact" ? JONES_MODE_EXACT : JONES_MODE_SAMPLED;
    opts.epsilon = epsilon;
    opts.delta = delta;
    opts.seed = seed;
    if (reference == "on")
        opts.with_reference = 1;
    else if (reference == "off")
        opts.with_reference = 0;
    else
        opts.with_reference = jones_braid_strands(braid.b) <= 8 &&
                              jones_braid_length(braid.b) <= 20 && k <= 16;

    jones_approx_result r{};
    if (jones_status st = jones_approx(braid.b, &opts, &r); st != JONES_OK)
        fail_api(st, "jones-approx failed");

    std::ostringstream js;
    js << "{\"command\":\"jones-approx\",\"braid\":" << braid_json(braid.b) << ",\"closure\":\""
       << closure_name << "\",\"k\":" << k << ",\"mode\":\"" << mode << "\",\"epsilon\":"
       << fmt_double(epsilon) << ",\"delta\":" << fmt_double(delta) << ",\"seed\":" << seed
       << ",\"estimate\":" << complex_json(r.estimate_re, r.estimate_im)
       << ",\"raw_mean\":" << complex_json(r.mean_re, r.mean_im)
       << ",\"rescale\":" << complex_json(r.rescale_re, r.rescale_im)
       << ",\"envelope\":" << fmt_double(r.envelope)
       << ",\"samples_per_part\":" << r.samples_per_part << ",\"writhe\":" << r.writhe;

    Rows rows;
    rows.add("command", std::string("jones-approx"));
    rows.add("braid", braid_text(braid.b));
    rows.add("closure", closure_name);
    rows.add("k", static_cast<long long>(k));
    rows.add("mode", mode);
    rows.add("epsilon", epsilon);
    rows.add("delta", delta);
    rows.add("seed", std::to_string(seed));
    rows.add_complex("estimate", r.estimate_re, r.estimate_im);
    rows.add_complex("raw_mean", r.mean_re, r.mean_im);
    rows.add_complex("rescale", r.rescale_re, r.rescale_im);
    rows.add("envelope", r.envelope);
    rows.add("samples_per_part", static_cast<long long>(r.samples_per_part));
    rows.add("writhe", static_cast<long long>(r.writhe));

    if (r.has_reference) {
        js << ",\"reference\":" << complex_json(r.reference_re, r.reference_im);
        rows.add_complex("reference", r.reference_re, r.reference_im);
    }
    js << ",\"conventions\":" << jones_conventions_json() << "}";
    render(format, js.str(), rows);
}

void run_sample_path(int n, int k, int count, std::uint64_t seed, const std::string& format) {
    int dim = 0;
    double nfac = 0;
    if (jones_status st = jones_path_space_dims(n, k, &dim, &nfac); st != JONES_OK)
        fail_api(st, "sample-path failed");

    std::vector<int> ells(k + 1), dims(k + 1);
    std::vector<double> lambdas(k + 1);
    int blocks = 0;
    if (jones_status st =
            jones_path_blocks(n, k, k + 1, ells.data(), dims.data(), lambdas.data(), &blocks);
        st != JONES_OK)
        fail_api(st, "sample-path failed");

    std::ostringstream js;
    js << "{\"command\":\"sample-path\",\"n\":" << n << ",\"k\":" << k << ",\"seed\":" << seed
       << ",\"dimension\":" << dim << ",\"normalization\":" << fmt_double(nfac) << ",\"blocks\":[";
    Rows rows;
    rows.add("command", std::string("sample-path"));
    rows.add("n", static_cast<long long>(n));
    rows.add("k", static_cast<long long>(k));
    rows.add("seed", std::to_string(seed));
    rows.add("dimension", static_cast<long long>(dim));
    rows.add("normalization", nfac);
    for (int i = 0; i < blocks; ++i) {
        js << (i ? "," : "") << "{\"endpoint\":" << ells[i] << ",\"dim\":" << dims[i]
           << ",\"lambda\":" << fmt_double(lambdas[i]) << "}";
        rows.add("block." + std::to_string(ells[i]) + ".dim",
                 static_cast<long long>(dims[i]));
        rows.add("block." + std::to_string(ells[i]) + ".lambda", lambdas[i]);
    }
    js << "],\"paths\":[";
    std::vector<char> buf(n + 1);
    for (int i = 0; i < count; ++i) {
        int endpoint = 0;
        if (jones_status st = jones_sample_path(n, k, seed, static_cast<std::uint64_t>(i),
                                                buf.data(), buf.size(), &endpoint);
            st != JONES_OK)
            fail_api(st, "sample-path failed");
        js << (i ? "," : "") << "{\"bits\":\"" << buf.data() << "\",\"endpoint\":" << endpoint
           << "}";
        rows.add("path." + std::to_string(i), std::string(buf.data()) + " (endpoint " +
                                                  std::to_string(endpoint) + ")");
    }
    js << "],\"conventions\":" << jones_conventions_json() << "}";
    render(format, js.str(), rows);
}

void run_emit_circuit(const std::string& braid_arg, const std::string& file, int k,
                      const std::string& hadamard, const std::string& input) {
    BraidHandle braid;
    load_braid(braid_arg, file, braid);
    char* text = nullptr;
    if (hadamard.empty()) {
        if (jones_status st = jones_circuit_text(braid.b, k, &text); st != JONES_OK)
            fail_api(st, "emit-circuit failed");
    } else {
        std::string bits = input;
        if (bits.empty()) {
            // default input: the capcup state 1010...
            for (int i = 0; i < jones_braid_strands(braid.b); ++i)
                bits += (i % 2 == 0) ? '1' : '0';
        }
        const int part = hadamard == "im" ? JONES_PART_IM : JONES_PART_RE;
        if (jones_status st = jones_hadamard_circuit_text(braid.b, k, bits.c_str(), part, &text);
            st != JONES_OK)
            fail_api(st, "emit-circuit failed");
    }
    std::cout << take_string(text);
}

void run_verify(const std::string& level, std::uint64_t seed, const std::string& format,
                int& exit_code) {
    char* report = nullptr;
    int ok = 0;
    if (jones_status st = jones_verify(level.c_str(), seed, &report, &ok); st != JONES_OK)
        fail_api(st, "verify failed");
    const std::string json = take_string(report);
    if (format == "json") {
        std::cout << "{\"command\":\"verify\",\"level\":\"" << level << "\",\"seed\":" << seed
                  << ",\"all_passed\":" << (ok ? "true" : "false") << ",\"checks\":" << json
                  << ",\"conventions\":" << jones_conventions_json() << "}\n";
    } else {
        // pull name/passed/residual pairs out of the flat report
        size_t at = 0;
        while ((at = json.find("{\"name\":\"", at)) != std::string::npos) {
            const size_t name_start = at + 9;
            const size_t name_end = json.find('"', name_start);
            const std::string name = json.substr(name_start, name_end - name_start);
            const size_t passed_at = json.find("\"passed\":", name_end);
            const bool passed = json.compare(passed_at + 9, 4, "true") == 0;
            const size_t detail_at = json.find("\"detail\":\"", passed_at);
            const size_t detail_end = json.find('"', detail_at + 10);
            const std::string detail = json.substr(detail_at + 10, detail_end - detail_at - 10);
            if (format == "csv")
                std::cout << csv_quote(name) << "," << (passed ? "pass" : "FAIL") << ","
                          << csv_quote(detail) << "\n";
            else
                std::cout << (passed ? "[pass] " : "[FAIL] ") << name << ": " << detail << "\n";
            at = detail_end;
        }
        if (format == "text")
            std::cout << (ok ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
    }
    exit_code = ok ? kExitOk : kExitComputation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jones polynomial toolkit: exact bracket/TL oracles, path-model simulation, "
                 "and braid-to-circuit synthesis"};
    app.require_subcommand(1);

    std::string format = "json";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();

    std::string braid_arg, file;
    std::string closure = "trace";
    int k = 0;
    int max_crossings = 0, max_strands = 0;

    auto add_braid_opts = [&](CLI::App* cmd, bool with_closure = true) {
        cmd->add_option("braid", braid_arg, "braid word, e.g. \"2: 1 1 1\" or JSON");
        cmd->add_option("--file", file, "read the braid from a file");
        if (with_closure)
            cmd->add_option("--closure", closure, "closure kind")
                ->check(CLI::IsMember({"trace", "plat"}))
                ->capture_default_str();
    };

    CLI::App* cmd_bracket =
        app.add_subcommand("bracket", "exact Kauffman bracket state sum")->fallthrough();
    add_braid_opts(cmd_bracket);
    cmd_bracket->add_option("--k", k, "also evaluate at t = exp(2*pi*i/k)");
    cmd_bracket->add_option("--max-crossings", max_crossings,
                            "state-sum crossing cap (default 24)");

    CLI::App* cmd_exact =
        app.add_subcommand("jones-exact", "exact Jones polynomial (state sum)")->fallthrough();
    add_braid_opts(cmd_exact);
    cmd_exact->add_option("--k", k, "also evaluate at t = exp(2*pi*i/k)");
    cmd_exact->add_option("--max-crossings", max_crossings,
                          "state-sum crossing cap (default 24)");

    CLI::App* cmd_tl = app.add_subcommand("jones-tl", "exact Jones polynomial (Temperley-Lieb trace)")
                           ->fallthrough();
    add_braid_opts(cmd_tl);
    cmd_tl->add_option("--k", k, "also evaluate at t = exp(2*pi*i/k)");
    cmd_tl->add_option("--max-strands", max_strands, "diagram strand cap (default 10)");

    double epsilon = 0.1, delta = 0.01;
    std::uint64_t seed = 0;
    std::string mode = "sampled", reference = "auto";
    CLI::App* cmd_approx =
        app.add_subcommand("jones-approx", "randomized path-model approximation")->fallthrough();
    add_braid_opts(cmd_approx);
    cmd_approx->add_option("--k", k, "evaluation root: t = exp(2*pi*i/k)")->required();
    cmd_approx->add_option("--epsilon", epsilon, "additive accuracy of the raw average")
        ->capture_default_str();
    cmd_approx->add_option("--delta", delta, "failure probability")->capture_default_str();
    CLI::Option* approx_seed = cmd_approx->add_option("--seed", seed, "RNG seed");
    cmd_approx->add_option("--mode", mode, "exact expectation or Bernoulli sampling")
        ->check(CLI::IsMember({"exact", "sampled"}))
        ->capture_default_str();
    cmd_approx->add_option("--reference", reference, "also compute the exact reference")
        ->check(CLI::IsMember({"auto", "on", "off"}))
        ->capture_default_str();

    int sp_n = 4, sp_k = 5, sp_count = 10;
    CLI::App* cmd_sample =
        app.add_subcommand("sample-path", "weighted path sampler diagnostics")->fallthrough();
    cmd_sample->add_option("--n", sp_n, "path length")->capture_default_str();
    cmd_sample->add_option("--k", sp_k, "root index k")->capture_default_str();
    cmd_sample->add_option("--count", sp_count, "number of draws")->capture_default_str();
    CLI::Option* sample_seed = cmd_sample->add_option("--seed", seed, "RNG seed");

    std::string hadamard, input_bits;
    CLI::App* cmd_emit =
        app.add_subcommand("emit-circuit", "braid-to-circuit compiler")->fallthrough();
    add_braid_opts(cmd_emit, false);
    cmd_emit->add_option("--k", k, "root index k")->required();
    cmd_emit->add_option("--hadamard-test", hadamard, "wrap in a Hadamard test")
        ->check(CLI::IsMember({"re", "im"}));
    cmd_emit->add_option("--input", input_bits, "input path bits for the Hadamard test");

    std::string level = "quick";
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "run the invariant suite")->fallthrough();
    cmd_verify->add_option("--level", level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}))
        ->capture_default_str();
    CLI::Option* verify_seed = cmd_verify->add_option("--seed", seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return kExitOk;
        }
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_bracket->parsed() || cmd_exact->parsed() || cmd_tl->parsed()) {
            const std::string name = cmd_bracket->parsed()   ? "bracket"
                                     : cmd_exact->parsed()   ? "jones-exact"
                                                             : "jones-tl";
            run_poly_command(name, braid_arg, file, closure, k, max_crossings, max_strands,
                             format);
        } else if (cmd_approx->parsed()) {
            run_approx(braid_arg, file, closure, k, epsilon, delta,
                       resolve_seed(approx_seed, seed), mode, reference, format);
        } else if (cmd_sample->parsed()) {
            run_sample_path(sp_n, sp_k, sp_count, resolve_seed(sample_seed, seed), format);
        } else if (cmd_emit->parsed()) {
            run_emit_circuit(braid_arg, file, k, hadamard, input_bits);
        } else if (cmd_verify->parsed()) {
            int exit_code = kExitOk;
            run_verify(level, resolve_seed(verify_seed, seed), format, exit_code);
            return exit_code;
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    return kExitOk;
}
