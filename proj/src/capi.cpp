#include "orka.h"

#include <cmath>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/extract.hpp"
#include "core/io.hpp"
#include "core/kernel.hpp"
#include "core/matrix.hpp"
#include "core/oracle.hpp"
#include "core/synth.hpp"

struct orka_matrix {
    orka::Matrix m;
};

struct orka_object {
    orka::ObjectEstimate est;
    orka_matrix u_view;  // borrowed handle returned by orka_object_u
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
orka_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return ORKA_OK;
    } catch (const orka::BudgetError& e) {
        g_last_error = e.what();
        return ORKA_E_BUDGET;
    } catch (const orka::IoError& e) {
        g_last_error = e.what();
        return ORKA_E_IO;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return ORKA_E_INVALID;
    } catch (const std::out_of_range& e) {
        g_last_error = e.what();
        return ORKA_E_INVALID;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return ORKA_E_NOMEM;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ORKA_E_INTERNAL;
    }
}

orka_status bad_arg(const char* msg) {
    g_last_error = msg;
    return ORKA_E_INVALID;
}

orka::FileFormat to_format(int format) {
    switch (format) {
        case 1: return orka::FileFormat::kCsv;
        case 2: return orka::FileFormat::kBinary;
        default: return orka::FileFormat::kAuto;
    }
}

orka::ExtractionParams to_params(const orka_params& p) {
    orka::ExtractionParams q;
    q.mu = p.mu;
    q.lipschitz = p.lipschitz;
    q.k_band = p.k_band;
    q.dims = p.dims;
    q.workers = p.workers > 0 ? p.workers : 1;
    q.node_budget = p.node_budget ? p.node_budget : orka::kDefaultNodeBudget;
    q.method = p.method == 1 ? orka::CorrelationMethod::kFft
             : p.method == 2 ? orka::CorrelationMethod::kDirect
                             : orka::CorrelationMethod::kAuto;
    return q;
}

orka_object* wrap_estimate(orka::ObjectEstimate&& est) {
    auto* o = new orka_object{std::move(est), {}};
    o->u_view.m = o->est.u;
    return o;
}

void copy_shifts(const orka::ShiftVector& lam, long* x, long* y) {
    if (x) std::memcpy(x, lam.x.data(), lam.x.size() * sizeof(long));
    if (y && lam.dims == 2) std::memcpy(y, lam.y.data(), lam.y.size() * sizeof(long));
}

}  // namespace

extern "C" {

double orka_mu_infinity(void) { return orka::kMuInfinity; }

const char* orka_last_error(void) { return g_last_error.c_str(); }

orka_status orka_matrix_create(size_t rows, size_t cols, orka_matrix** out) {
    if (!out || rows == 0 || cols == 0) return bad_arg("matrix_create: bad arguments");
    return guarded([&] { *out = new orka_matrix{orka::Matrix(rows, cols)}; });
}

void orka_matrix_free(orka_matrix* m) { delete m; }

size_t orka_matrix_rows(const orka_matrix* m) { return m ? m->m.rows() : 0; }
size_t orka_matrix_cols(const orka_matrix* m) { return m ? m->m.cols() : 0; }
size_t orka_matrix_frame_rows(const orka_matrix* m) { return m ? m->m.frame_rows() : 0; }
size_t orka_matrix_frame_cols(const orka_matrix* m) { return m ? m->m.frame_cols() : 0; }

orka_status orka_matrix_set_frame_shape(orka_matrix* m, size_t fr, size_t fc) {
    if (!m) return bad_arg("null matrix");
    return guarded([&] { m->m.set_frame_shape(fr, fc); });
}

double* orka_matrix_data(orka_matrix* m) { return m ? m->m.data() : nullptr; }
const double* orka_matrix_data_const(const orka_matrix* m) { return m ? m->m.data() : nullptr; }

orka_status orka_matrix_load(const char* path, int format, orka_matrix** out) {
    if (!path || !out) return bad_arg("matrix_load: bad arguments");
    return guarded([&] { *out = new orka_matrix{orka::read_matrix(path, to_format(format))}; });
}

orka_status orka_matrix_save(const orka_matrix* m, const char* path, int format) {
    if (!m || !path) return bad_arg("matrix_save: bad arguments");
    return guarded([&] { orka::write_matrix(m->m, path, to_format(format)); });
}

orka_status orka_matrix_normalize_columns(orka_matrix* m) {
    if (!m) return bad_arg("null matrix");
    return guarded([&] { m->m.normalize_columns(); });
}

orka_status orka_psnr(const orka_matrix* ref, const orka_matrix* x, double* out_db) {
    if (!ref || !x || !out_db) return bad_arg("psnr: bad arguments");
    return guarded([&] { *out_db = orka::psnr(ref->m, x->m); });
}

orka_status orka_gen_gap_matrix(orka_matrix** out) {
    if (!out) return bad_arg("null out");
    return guarded([&] { *out = new orka_matrix{orka::gen_gap_matrix()}; });
}

orka_status orka_gen_pulse_scene(size_t m, size_t n, double velocity, double width,
                                 double form_drift, int add_noise, double noise_psnr_db,
                                 uint64_t seed, orka_matrix** out_data,
                                 orka_matrix** out_clean, long* truth_x) {
    if (!out_data) return bad_arg("null out_data");
    return guarded([&] {
        orka::PulseSceneParams p;
        p.m = m;
        p.n = n;
        p.velocity = velocity;
        p.width = width;
        p.form_drift = form_drift;
        p.add_noise = add_noise != 0;
        p.noise_psnr_db = noise_psnr_db;
        p.seed = seed;
        orka::PulseScene scene = orka::gen_pulse_scene(p);
        if (truth_x) std::memcpy(truth_x, scene.truth.x.data(), n * sizeof(long));
        if (out_clean) *out_clean = new orka_matrix{std::move(scene.clean)};
        *out_data = new orka_matrix{std::move(scene.data)};
    });
}

orka_status orka_gen_moving_square(size_t frame_rows, size_t frame_cols, size_t frames,
                                   long vx, long vy, size_t square, double amplitude,
                                   uint64_t seed, orka_matrix** out_clip,
                                   long* truth_x, long* truth_y) {
    if (!out_clip) return bad_arg("null out_clip");
    return guarded([&] {
        orka::MovingSquareScene scene = orka::gen_moving_square(
            frame_rows, frame_cols, frames, vx, vy, square, amplitude, seed);
        copy_shifts(scene.truth, truth_x, truth_y);
        *out_clip = new orka_matrix{std::move(scene.clip)};
    });
}

orka_status orka_gen_random(size_t rows, size_t cols, uint64_t seed,
                            int normalize_columns, orka_matrix** out) {
    if (!out) return bad_arg("null out");
    return guarded([&] {
        *out = new orka_matrix{orka::random_matrix(rows, cols, seed, normalize_columns != 0)};
    });
}

void orka_params_init(orka_params* p) {
    if (!p) return;
    p->mu = 1.0;
    p->lipschitz = 1;
    p->k_band = 4;
    p->dims = 1;
    p->workers = 1;
    p->node_budget = orka::kDefaultNodeBudget;
    p->method = 0;
}

orka_status orka_extract(const orka_matrix* d, const orka_params* p, orka_object** out) {
    if (!d || !p || !out) return bad_arg("extract: bad arguments");
    return guarded([&] { *out = wrap_estimate(orka::extract(d->m, to_params(*p))); });
}

orka_status orka_decompose(const orka_matrix* d, const orka_params* params,
                           size_t n_objects, orka_object** out_objects,
                           orka_matrix** out_residual) {
    if (!d || !params || !out_objects || n_objects == 0)
        return bad_arg("decompose: bad arguments");
    return guarded([&] {
        std::vector<orka::ExtractionParams> per;
        per.reserve(n_objects);
        for (size_t i = 0; i < n_objects; ++i) per.push_back(to_params(params[i]));
        orka::Decomposition dec = orka::decompose(d->m, per);
        for (size_t i = 0; i < n_objects; ++i)
            out_objects[i] = wrap_estimate(std::move(dec.objects[i]));
        if (out_residual) *out_residual = new orka_matrix{std::move(dec.residual)};
    });
}

void orka_object_free(orka_object* o) { delete o; }

const orka_matrix* orka_object_u(const orka_object* o) { return o ? &o->u_view : nullptr; }

orka_status orka_object_shifts(const orka_object* o, long* x, long* y, size_t* n) {
    if (!o) return bad_arg("null object");
    if (n) *n = o->est.lambda.size();
    copy_shifts(o->est.lambda, x, y);
    return ORKA_OK;
}

double orka_object_objective(const orka_object* o) { return o ? o->est.objective : 0.0; }
double orka_object_tau(const orka_object* o) { return o ? o->est.tau : 0.0; }

uint64_t orka_object_nodes_per_partition(const orka_object* o) {
    return o ? o->est.nodes_per_partition : 0;
}

double orka_object_stage_seconds(const orka_object* o, int stage) {
    if (!o) return 0.0;
    switch (stage) {
        case 0: return o->est.t_correlate;
        case 1: return o->est.t_kernel;
        case 2: return o->est.t_graph;
        case 3: return o->est.t_solve;
        default: return 0.0;
    }
}

orka_status orka_object_contribution(const orka_object* o, orka_matrix** out) {
    if (!o || !out) return bad_arg("contribution: bad arguments");
    return guarded([&] {
        *out = new orka_matrix{orka::shift_columns(o->est.u, o->est.lambda)};
    });
}

orka_status orka_brute_force(const orka_matrix* d, double mu, long c, size_t k_band,
                             int dims, uint64_t enum_budget, long* out_x, long* out_y,
                             double* out_tau) {
    if (!d) return bad_arg("null matrix");
    return guarded([&] {
        orka::BruteForceResult res = orka::brute_force_best_lambda(
            d->m, mu, c, k_band, dims,
            enum_budget ? enum_budget : orka::kDefaultEnumBudget);
        copy_shifts(res.lambda, out_x, out_y);
        if (out_tau) *out_tau = res.tau;
    });
}

orka_status orka_tau(const orka_matrix* d, double mu, long c, size_t k_band, int dims,
                     const long* x, const long* y, double* out_tau) {
    if (!d || !x || !out_tau || (dims == 2 && !y)) return bad_arg("tau: bad arguments");
    return guarded([&] {
        const std::size_t n = d->m.cols();
        orka::ShiftVector lam;
        lam.dims = dims;
        lam.lipschitz = static_cast<int>(c);
        lam.x.assign(x, x + n);
        if (dims == 2) lam.y.assign(y, y + n);
        const std::size_t k_eff = n > 1 ? std::min(k_band, n - 1) : 0;
        orka::CorrelationBand band = orka::correlate_band(d->m, c, k_eff);
        orka::KernelWeights kernel = orka::build_kernel(n, mu, k_eff);
        *out_tau = orka::tau_k(lam, band, kernel);
    });
}

}  // extern "C"
