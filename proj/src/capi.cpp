#include "jones.h"

#include "bracket.hpp"
#include "checks.hpp"
#include "circuit.hpp"
#include "errors.hpp"
#include "estimator.hpp"
#include "json_writer.hpp"
#include "laurent.hpp"
#include "path_model.hpp"
#include "rng.hpp"
#include "tl_diagram.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

using namespace jones;

struct jones_braid {
    BraidWord word;
};

struct jones_poly {
    LaurentPoly poly;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Closure to_closure(int closure) {
    if (closure == JONES_CLOSURE_TRACE)
        return Closure::trace;
    if (closure == JONES_CLOSURE_PLAT)
        return Closure::plat;
    throw std::invalid_argument("closure must be 0 (trace) or 1 (plat)");
}

template <typename Fn> jones_status guarded(Fn&& fn) {
    try {
        fn();
        return JONES_OK;
    } catch (const limit_error& e) {
        g_last_error = e.what();
        return JONES_ELIMIT;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return JONES_EINVAL;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return JONES_EINTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return JONES_EINTERNAL;
    }
}

jones_status require(bool cond, const char* message) {
    if (cond)
        return JONES_OK;
    g_last_error = message;
    return JONES_EINVAL;
}

} // namespace

extern "C" {

const char* jones_version(void) {
    return "1.0.0";
}

const char* jones_conventions_json(void) {
    return "{\"chirality\":\"sigma_i passes strand i over strand i+1\","
           "\"capcup_weight\":\"A at positive crossings\","
           "\"A\":\"i*exp(-i*pi/(2k))\",\"t\":\"A^-4 = exp(2*pi*i/k)\","
           "\"d\":\"-A^2-A^-2 = 2*cos(pi/k)\","
           "\"orientation\":\"each component runs downward at its leftmost top port\"}";
}

const char* jones_status_name(jones_status s) {
    switch (s) {
    case JONES_OK: return "ok";
    case JONES_EINVAL: return "invalid-argument";
    case JONES_ELIMIT: return "limit-exceeded";
    case JONES_EINTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* jones_last_error(void) {
    return g_last_error.c_str();
}

void jones_string_free(char* s) {
    std::free(s);
}

jones_status jones_braid_parse(const char* text, jones_braid** out) {
    if (jones_status st = require(text && out, "null argument"); st != JONES_OK)
        return st;
    return guarded([&] {
        auto b = std::make_unique<jones_braid>();
        b->word = BraidWord::parse(text);
        *out = b.release();
    });
}

jones_status jones_braid_create(int strands, const int* word, size_t len, jones_braid** out) {
    if (jones_status st = require(out && (word || len == 0), "null argument"); st != JONES_OK)
        return st;
    return guarded([&] {
        auto b = std::make_unique<jones_braid>();
        b->word.strands = strands;
        b->word.word.assign(word, word + len);
        b->word.validate();
        *out = b.release();
    });
}

void jones_braid_free(jones_braid* b) {
    delete b;
}

int jones_braid_strands(const jones_braid* b) {
    return b ? b->word.strands : 0;
}

size_t jones_braid_length(const jones_braid* b) {
    return b ? b->word.word.size() : 0;
}

jones_status jones_braid_word(const jones_braid* b, int* out, size_t cap) {
    if (jones_status st = require(b && out, "null argument"); st != JONES_OK)
        return st;
    if (jones_status st = require(cap >= b->word.word.size(), "buffer too small");
        st != JONES_OK)
        return st;
    std::memcpy(out, b->word.word.data(), b->word.word.size() * sizeof(int));
    return JONES_OK;
}

int jones_braid_exponent_sum(const jones_braid* b) {
    return b ? b->word.exponent_sum() : 0;
}

jones_status jones_braid_writhe(const jones_braid* b, int closure, int* writhe,
                                int* components) {
    if (jones_status st = require(b != nullptr, "null braid"); st != JONES_OK)
        return st;
    return guarded([&] {
        LinkDiagram d(b->word, to_closure(closure));
        const OrientedLinkDiagram o = d.orient();
        if (writhe)
            *writhe = o.writhe;
        if (components)
            *components = o.components;
    });
}

jones_status jones_bracket_poly(const jones_braid* b, int closure, int max_crossings,
                                jones_poly** out) {
    if (jones_status st = require(b && out, "null argument"); st != JONES_OK)
        return st;
    return guarded([&] {
        auto p = std::make_unique<jones_poly>();
        p->poly = bracket(LinkDiagram(b->word, to_closure(closure)),
                          max_crossings > 0 ? max_crossings : kDefaultBracketCap);
        *out = p.release();
    });
}

jones_status jones_exact_poly(const jones_braid* b, int closure, int max_crossings,
                              jones_poly** out) {
    if (jones_status st = require(b && out, "null argument"); st != JONES_OK)
        return st;
    return guarded([&] {
        auto p = std::make_unique<jones_poly>();
        p->poly = jones_exact(LinkDiagram(b->word, to_closure(closure)),
                              max_crossings > 0 ? max_crossings : kDefaultBracketCap);
        *out = p.release();
    });
}

jones_status jones_tl_poly(const jones_braid* b, int closure, int max_strands,
                           jones_poly** out) {
    if (jones_status st = require(b && out, "null argument"); st != JONES_OK)
        return st;
    return guarded([&] {
        auto p = std::make_unique<jones_poly>();
        p->poly = jones_via_trace(b->word, to_closure(closure),
                                  max_strands > 0 ? max_strands : kDefaultTlStrandCap);
        *out = p.release();
    });
}

void jones_poly_free(jones_poly* p) {
    delete p;
}

int jones_poly_equal(const jones_poly* p, const jones_poly* q) {
    if (!p || !q)
        return 0;
    return p->poly == q->poly ? 1 : 0;
}

jones_status jones_poly_str(const jones_poly* p, char** out) {
    if (jones_status st = require(p && out, "null argument"); st != JONES_OK)
        return st;
    return guarded([&] { *out = dup_string(p->poly.str()); });
}

jones_status jones_poly_json(const jones_poly* p, char** out) {
    if (jones_status st = require(p && out, "null argument"); st != JONES_OK)
        return st;
    return guarded([&] { *out = dup_string(p->poly.json()); });
}

jones_status jones_poly_eval_unit_root(const jones_poly* p, int k, double* re, double* im) {
    if (jones_status st = require(p && re && im, "null argument"); st != JONES_OK)
        return st;
    return guarded([&] {
        const Complex v = p->poly.eval(unit_A(k));
        *re = v.real();
        *im = v.imag();
    });
}

jones_status jones_poly_eval(const jones_poly* p, double a_re, double a_im, double* re,
                             double* im) {
    if (jones_status st = require(p && re && im, "null argument"); st != JONES_OK)
        return st;
    return guarded([&] {
        const Complex v = p->poly.eval(Complex(a_re, a_im));
        *re = v.real();
        *im = v.imag();
    });
}

jones_status jones_path_space_dims(int n, int k, int* dim, double* normalization_out) {
    return guarded([&] {
        PathBasis basis(n, k);
        CoefficientTable ct(k);
        if (dim)
            *dim = basis.dim();
        if (normalization_out)
            *normalization_out = normalization(basis, ct);
    });
}

jones_status jones_path_blocks(int n, int k, int cap, int* ells, int* dims, double* lambdas,
                               int* count) {
    return guarded([&] {
        PathBasis basis(n, k);
        CoefficientTable ct(k);
        int total = 0;
        for (int l = 1; l <= k - 1; ++l) {
            if (basis.block_dim(l) == 0)
                continue;
            if (total < cap) {
                if (ells)
                    ells[total] = l;
                if (dims)
                    dims[total] = basis.block_dim(l);
                if (lambdas)
                    lambdas[total] = ct.lambda[l];
            }
            ++total;
        }
        if (count)
            *count = total;
    });
}

jones_status jones_sample_path(int n, int k, uint64_t seed, uint64_t index, char* buf,
                               size_t cap, int* endpoint) {
    if (jones_status st = require(buf != nullptr, "null buffer"); st != JONES_OK)
        return st;
    if (jones_status st = require(cap > static_cast<size_t>(n), "buffer too small");
        st != JONES_OK)
        return st;
    return guarded([&] {
        PathBasis basis(n, k);
        CoefficientTable ct(k);
        const auto counts = PathBasis::counts(n, k);
        SplitMix64 rng = SplitMix64::stream(seed, index);
        const std::uint32_t p = sample_weighted_path(basis, ct, counts, rng);
        const std::string bits = PathBasis::bits_string(p, n);
        std::memcpy(buf, bits.c_str(), bits.size() + 1);
        if (endpoint)
            *endpoint = basis.endpoint(basis.index_of(p));
    });
}

jones_status jones_approx(const jones_braid* b, const jones_approx_opts* opts,
                          jones_approx_result* out) {
    if (jones_status st = require(b && opts && out, "null argument"); st != JONES_OK)
        return st;
    return guarded([&] {
        EstimatorConfig cfg;
        cfg.epsilon = opts->epsilon;
        cfg.delta = opts->delta;
        cfg.seed = opts->seed;
        cfg.mode = opts->mode == JONES_MODE_EXACT ? EstimatorMode::exact_expectation
                                                  : EstimatorMode::bernoulli_sampled;
        const ApproxResult r =
            to_closure(opts->closure) == Closure::trace
                ? approx_jones_trace(b->word, opts->k, cfg, opts->with_reference != 0)
                : approx_jones_plat(b->word, opts->k, cfg, opts->with_reference != 0);
        out->estimate_re = r.estimate.real();
        out->estimate_im = r.estimate.imag();
        out->mean_re = r.mean_re;
        out->mean_im = r.mean_im;
        out->rescale_re = r.rescale.real();
        out->rescale_im = r.rescale.imag();
        out->envelope = r.envelope;
        out->samples_per_part = r.samples_per_part;
        out->writhe = r.writhe;
        out->has_reference = r.reference.has_value() ? 1 : 0;
        out->reference_re = r.reference ? r.reference->real() : 0.0;
        out->reference_im = r.reference ? r.reference->imag() : 0.0;
    });
}

jones_status jones_exact_value(const jones_braid* b, int closure, int k, double* re,
                               double* im) {
    if (jones_status st = require(b && re && im, "null argument"); st != JONES_OK)
        return st;
    return guarded([&] {
        const Complex v = exact_reference(b->word, to_closure(closure), k);
        *re = v.real();
        *im = v.imag();
    });
}

jones_status jones_circuit_text(const jones_braid* b, int k, char** out) {
    if (jones_status st = require(b && out, "null argument"); st != JONES_OK)
        return st;
    return guarded([&] { *out = dup_string(emit_text(synthesize_braid(b->word, k))); });
}

jones_status jones_hadamard_circuit_text(const jones_braid* b, int k, const char* input_path,
                                         int part, char** out) {
    if (jones_status st = require(b && out && input_path, "null argument"); st != JONES_OK)
        return st;
    return guarded([&] {
        *out = dup_string(
            emit_text(synthesize_hadamard_test(b->word, k, input_path, part ? 1 : 0)));
    });
}

jones_status jones_verify(const char* level, uint64_t seed, char** report_json, int* all_ok) {
    if (jones_status st = require(level != nullptr, "null level"); st != JONES_OK)
        return st;
    return guarded([&] {
        const auto results = run_checks(level, seed);
        bool ok = true;
        JsonWriter w;
        w.begin_array();
        for (const auto& r : results) {
            ok = ok && r.passed;
            w.begin_object();
            w.field("name", r.name);
            w.field("passed", r.passed);
            w.field("residual", r.residual);
            w.field("detail", r.detail);
            w.end_object();
        }
        w.end_array();
        if (report_json)
            *report_json = dup_string(w.str());
        if (all_ok)
            *all_ok = ok ? 1 : 0;
    });
}

} // extern "C"
