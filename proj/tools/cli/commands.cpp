#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "brickwall/dynamics.hpp"
#include "brickwall/gates.hpp"
#include "brickwall/integrability.hpp"
#include "brickwall/ruelle_pollicott.hpp"
#include "brickwall/spectral.hpp"
#include "brickwall/symmetry.hpp"

namespace brickwall::cli {

using nlohmann::json;

double Params::real(const std::string& key, double fallback) {
    const double v = config_.get_double(key, fallback);
    resolved_[key] = num(v);
    return v;
}

double Params::required_real(const std::string& key) {
    const double v = config_.require_double(key);
    resolved_[key] = num(v);
    return v;
}

int Params::integer(const std::string& key, int fallback, int lo, int hi) {
    const long long v = config_.get_int(key, fallback);
    if (v < lo || v > hi)
        throw ParameterError("'" + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    resolved_[key] = std::to_string(v);
    return static_cast<int>(v);
}

std::uint64_t Params::u64(const std::string& key, std::uint64_t fallback) {
    const std::uint64_t v = config_.get_u64(key, fallback);
    resolved_[key] = std::to_string(v);
    return v;
}

bool Params::flag(const std::string& key, bool fallback) {
    const bool v = config_.get_bool(key, fallback);
    resolved_[key] = v ? "true" : "false";
    return v;
}

std::string Params::text(const std::string& key, const std::string& fallback) {
    const std::string v = config_.get_string(key, fallback);
    resolved_[key] = v;
    return v;
}

std::vector<int> Params::int_list(const std::string& key, const std::vector<int>& fallback) {
    const std::vector<int> v = config_.get_int_list(key, fallback);
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    resolved_[key] = s;
    return v;
}

OutputSink& Context::open_sink() {
    if (!sink) sink = std::make_unique<OutputSink>(out_dir, record);
    return *sink;
}

const std::vector<FlagSpec>& common_flags() {
    static const std::vector<FlagSpec> flags = {
        {"run.seed", "--seed", "root seed (u64) for every random draw"},
        {"run.threads", "--threads", "worker threads"},
        {"run.out_dir", "--out-dir", "output directory"},
    };
    return flags;
}

const std::vector<FlagSpec>& gate_flags() {
    static const std::vector<FlagSpec> flags = {
        {"hamiltonian.tau", "--tau", "gate duration"},
        {"hamiltonian.delta", "--delta", "anisotropy"},
        {"hamiltonian.B", "--B", "staggered field"},
        {"hamiltonian.D", "--D", "Dzyaloshinskii-Moriya coupling"},
        {"hamiltonian.M", "--M", "uniform field"},
        {"hamiltonian.A", "--A", "constant shift"},
        {"hamiltonian.J", "--J", "hopping (default 1)"},
        {"haar.delta_phase", "--haar-delta", "corner phase"},
        {"haar.alpha", "--haar-alpha", "central block phase"},
        {"haar.phi", "--haar-phi", "mixing angle in [0, pi/2]"},
        {"haar.chi", "--haar-chi", "diagonal phase"},
        {"haar.theta_v", "--haar-theta", "hopping phase"},
        {"gate.haar_seed", "--haar-seed", "draw a Haar-random MC gate from this seed"},
    };
    return flags;
}

std::set<std::string> allowed_keys(const CommandSpec& spec) {
    std::set<std::string> keys;
    for (const auto& f : common_flags()) keys.insert(f.key);
    if (spec.uses_gate)
        for (const auto& f : gate_flags()) keys.insert(f.key);
    for (const auto& f : spec.flags) keys.insert(f.key);
    return keys;
}

namespace {

struct GateChoice {
    TwoQubitGate gate;
    json description;
};

GateChoice resolve_gate(Params& p) {
    const bool ham = p.has_section("hamiltonian");
    const bool haar = p.has_section("haar");
    const bool seeded = p.has("gate.haar_seed");
    const int n = int(ham) + int(haar) + int(seeded);
    if (n == 0)
        throw ParameterError("no gate given: set [hamiltonian] (--tau ...), [haar] (--haar-phi ...) or --haar-seed");
    if (n > 1) throw ParameterError("conflicting gate sources: give exactly one of [hamiltonian], [haar], haar_seed");
    GateChoice c;
    if (ham) {
        HamiltonianGateParams h;
        h.tau = p.required_real("hamiltonian.tau");
        h.delta = p.real("hamiltonian.delta", 0.0);
        h.B = p.real("hamiltonian.B", 0.0);
        h.D = p.real("hamiltonian.D", 0.0);
        h.M = p.real("hamiltonian.M", 0.0);
        h.A = p.real("hamiltonian.A", 0.0);
        h.J = p.real("hamiltonian.J", 1.0);
        c.gate = gate_from_hamiltonian(h);
        c.description = {{"source", "hamiltonian"}, {"tau", h.tau}, {"delta", h.delta}, {"B", h.B},
                         {"D", h.D},                {"M", h.M},     {"A", h.A},         {"J", h.J}};
        return c;
    }
    HaarGateParams h;
    if (haar) {
        h.delta_phase = p.real("haar.delta_phase", 0.0);
        h.alpha = p.real("haar.alpha", 0.0);
        h.phi = p.required_real("haar.phi");
        h.chi = p.real("haar.chi", 0.0);
        h.theta_v = p.real("haar.theta_v", 0.0);
    } else {
        h = sample_haar(p.u64("gate.haar_seed", 0));
    }
    c.gate = gate_from_haar(h);
    c.description = {{"source", haar ? "haar" : "haar_seed"},
                     {"delta_phase", h.delta_phase},
                     {"alpha", h.alpha},
                     {"phi", h.phi},
                     {"chi", h.chi},
                     {"theta_v", h.theta_v}};
    if (seeded) c.description["haar_seed"] = std::stoull(p.text("gate.haar_seed", "0"));
    return c;
}

std::string phase_label(const TwoQubitGate& g) {
    try {
        if (g.hamiltonian) return to_string(classify_phase_hamiltonian(*g.hamiltonian).phase);
        return to_string(classify_phase_haar(haar_params_from_gate(g).params).phase);
    } catch (const Error&) {
        return "undetermined";
    }
}

json haar_json(const HaarGateParams& h) {
    return {{"delta_phase", h.delta_phase}, {"alpha", h.alpha}, {"phi", h.phi}, {"chi", h.chi}, {"theta_v", h.theta_v}};
}

json r_json(const RMatrixParams& r) {
    return {{"beta", r.beta}, {"xi", r.xi},   {"theta", r.theta},
            {"rho", r.rho},   {"u", r.u},     {"phase", to_string(r.phase)}};
}

// Sizes beyond what the backend can hold are capacity errors, not bad input.
int sites(Params& p, int fallback, int lo, int capacity) {
    const int L = p.integer("run.L", fallback, lo, 1 << 20);
    if (L > capacity)
        throw CapacityError("L = " + std::to_string(L) + " exceeds the limit of " + std::to_string(capacity) +
                            " sites for this subcommand");
    return L;
}

int threads(Params& p) { return p.integer("run.threads", 1, 1, 1024); }
std::uint64_t seed(Params& p) { return p.u64("run.seed", 0); }

Boundary boundary(Params& p, const std::string& fallback) {
    return parse_boundary(p.text("run.boundary", fallback));
}

// ---- classify

void run_classify(Context& ctx) {
    auto& p = ctx.params;
    const GateChoice g = resolve_gate(p);
    auto& out = ctx.open_sink();
    json j;
    j["gate"] = g.description;
    if (g.gate.hamiltonian) {
        const PhaseClassification c = classify_phase_hamiltonian(*g.gate.hamiltonian);
        j["phase"] = to_string(c.phase);
        j["eq16_lhs_infinite"] = c.lhs_infinite;
        if (c.lhs_infinite)
            j["eq16_lhs"] = nullptr;
        else
            j["eq16_lhs"] = c.lhs;
    }
    try {
        const HaarExtraction ex = haar_params_from_gate(g.gate);
        const HaarPhase hp = classify_phase_haar(ex.params);
        j["phase_from_haar"] = to_string(hp.phase);
        j["cos_phi"] = hp.cos_phi;
        j["cos_gamma"] = hp.cos_gamma;
        j["critical_distance"] = hp.cos_phi - hp.cos_gamma;
        if (!j.contains("phase")) j["phase"] = to_string(hp.phase);
    } catch (const StructureError& e) {
        j["phase_from_haar"] = nullptr;
        j["haar_error"] = e.what();
    }
    out.json("classify.json", j);
}

// ---- map-params

void run_map_params(Context& ctx) {
    auto& p = ctx.params;
    const GateChoice g = resolve_gate(p);
    auto& out = ctx.open_sink();
    const HaarExtraction ex = haar_params_from_gate(g.gate);
    const HaarToR m = haar_to_r(ex.params);
    const Mat4 rebuilt = gate_from_r(m.params).matrix;
    json j;
    j["gate"] = g.description;
    j["haar"] = haar_json(ex.params);
    j["magnetization_phase"] = ex.magnetization_phase;
    j["r_matrix"] = r_json(m.params);
    j["gamma"] = m.gamma;
    j["critical_distance"] = m.critical_distance;
    j["shifted"] = m.shifted;
    j["identity"] = m.identity;
    j["reconstruction_error"] = max_abs(rebuilt - gate_from_haar(ex.params).matrix);
    out.json("map_params.json", j);
}

// ---- verify-ybe

void run_verify_ybe(Context& ctx) {
    auto& p = ctx.params;
    const int trials = p.integer("run.trials", 100, 1, 10000000);
    const double tol = p.real("run.tolerance", 1e-12);
    const std::uint64_t root = p.has("gate.haar_seed") ? p.u64("gate.haar_seed", 0) : seed(p);
    auto& out = ctx.open_sink();

    std::vector<std::vector<std::string>> rows;
    double max_ybe = 0.0, max_inv = 0.0, max_rec = 0.0;
    int skipped = 0, phase1 = 0;
    for (int i = 0; i < trials; ++i) {
        const std::uint64_t s = derive_seed(root, static_cast<std::uint64_t>(i));
        const HaarGateParams h = sample_haar(s);
        Rng rng(derive_seed(s, 0));
        const double x = rng.uniform(-1.0, 1.0), y = rng.uniform(-1.0, 1.0);
        HaarToR m;
        try {
            m = haar_to_r(h);
        } catch (const CriticalManifoldError&) {
            ++skipped;
            rows.push_back({std::to_string(i), "critical", "", "", ""});
            continue;
        } catch (const DegenerateError&) {
            ++skipped;
            rows.push_back({std::to_string(i), "degenerate", "", "", ""});
            continue;
        }
        const double ybe = check_yang_baxter(m.params, x, y);
        const double inv = max_abs(r_matrix(m.params, -x) * r_matrix(m.params, x) - Mat4::Identity());
        const double rec = max_abs(gate_from_r(m.params).matrix - gate_from_haar(h).matrix);
        max_ybe = std::max(max_ybe, ybe);
        max_inv = std::max(max_inv, inv);
        max_rec = std::max(max_rec, rec);
        phase1 += m.params.phase == Phase::I;
        rows.push_back({std::to_string(i), to_string(m.params.phase), num(ybe), num(inv), num(rec)});
    }
    out.csv("verify_ybe.csv", {"trial", "phase", "ybe_residual", "inverse_residual", "reconstruction_error"}, rows);
    const bool pass = max_ybe < tol;
    out.json("verify_ybe.json", {{"trials", trials},
                                 {"skipped", skipped},
                                 {"phase_I", phase1},
                                 {"max_ybe_residual", max_ybe},
                                 {"max_inverse_residual", max_inv},
                                 {"max_reconstruction_error", max_rec},
                                 {"tolerance", tol},
                                 {"pass", pass}});
    if (!pass) throw Error("Yang-Baxter residual " + num(max_ybe) + " exceeds tolerance " + num(tol));
}

// ---- charges

std::vector<std::vector<std::string>> matrix_rows(const CMatrix& m) {
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if (m(r, c) != 0.0)
                rows.push_back({std::to_string(r), std::to_string(c), num(m(r, c).real()), num(m(r, c).imag())});
    return rows;
}

void run_charges(Context& ctx) {
    auto& p = ctx.params;
    const GateChoice g = resolve_gate(p);
    const int L = sites(p, 8, 4, kMaxDenseSites);
    const int ell = p.integer("run.ell", 1, 1, 4);
    const int nthreads = threads(p);
    if (L % 2) throw ParameterError("L must be even");
    auto& out = ctx.open_sink();

    const HaarToR m = haar_to_r(haar_params_from_gate(g.gate).params);
    const CMatrix U = build_propagator(BrickworkCircuit::homogeneous(L, Boundary::periodic, g.gate)).entries;
    json j;
    j["gate"] = g.description;
    j["r_matrix"] = r_json(m.params);
    j["L"] = L;
    j["ell"] = ell;
    for (int sign : {1, -1}) {
        const std::string tag = sign > 0 ? "plus" : "minus";
        ChargeFamily f = ell == 1 ? charge_q1(m.params, sign, L) : higher_charge(m.params, ell, sign, L, nthreads);
        const CMatrix& q = f.matrix.entries;
        json c;
        c["commutator"] = max_abs(q * U - U * q);
        c["density_support"] = f.density_support;
        c["density_start"] = f.density_start;
        if (f.out_of_window >= 0.0) c["out_of_window"] = f.out_of_window;
        if (ell == 1) {
            const ChargeFamily cf = charge_q1_closed_form(m.params, sign, L);
            c["closed_form_difference"] = max_abs(traceless(q) - traceless(cf.matrix.entries));
        }
        j[tag] = c;
        if (f.density.size() > 0)
            out.csv("charge_density_" + tag + ".csv", {"row", "col", "re", "im"}, matrix_rows(f.density));
    }
    out.json("charges.json", j);
}

// ---- spectrum-stats

void run_spectrum_stats(Context& ctx) {
    auto& p = ctx.params;
    const int L = sites(p, 12, 4, kMaxSectorSites);
    const Boundary bc = boundary(p, "periodic");
    const std::string kind = p.text("run.circuit", "homogeneous");
    if (kind != "homogeneous" && kind != "two-gate")
        throw ParameterError("run.circuit must be 'homogeneous' or 'two-gate'");
    const bool two = kind == "two-gate";
    ResolutionOptions opt;
    opt.momentum = p.flag("run.momentum", bc == Boundary::periodic);
    opt.spacetime = p.flag("run.spacetime", !two && bc == Boundary::periodic);
    opt.resolve_reflection = p.flag("run.reflection", true);
    opt.threads = threads(p);
    const int realizations = two ? p.integer("run.realizations", 10, 1, 100000) : 1;
    const int bins = p.integer("run.bins", 40, 4, 10000);
    if (L % 2) throw ParameterError("L must be even");
    if (opt.momentum && bc != Boundary::periodic) throw ParameterError("momentum needs periodic boundaries");

    GateChoice g;
    std::uint64_t root = 0;
    if (two) {
        root = p.has("gate.haar_seed") ? p.u64("gate.haar_seed", 0) : seed(p);
        if (p.has_section("hamiltonian") || p.has_section("haar"))
            throw ParameterError("two-gate circuits draw their gates from the seed; drop explicit gate parameters");
    } else {
        g = resolve_gate(p);
    }
    auto& out = ctx.open_sink();

    std::vector<std::vector<std::string>> sector_rows, level_rows;
    std::vector<SpectrumResult> pooled;
    std::vector<double> per_real;
    json reals = json::array();
    for (int i = 0; i < realizations; ++i) {
        BrickworkCircuit c;
        json desc;
        if (two) {
            const HaarGateParams a = sample_haar(derive_seed(root, 2 * static_cast<std::uint64_t>(i)));
            const HaarGateParams b = sample_haar(derive_seed(root, 2 * static_cast<std::uint64_t>(i) + 1));
            c = BrickworkCircuit::two_gate(L, bc, gate_from_haar(a), gate_from_haar(b));
            desc = {{"gate_a", haar_json(a)}, {"gate_b", haar_json(b)}};
        } else {
            c = BrickworkCircuit::homogeneous(L, bc, g.gate);
            desc = {{"gate", g.description}};
        }
        const std::vector<SpectrumResult> res = resolved_spectra(c, opt);
        const double r = pooled_r_tilde(res);
        per_real.push_back(r);
        desc["r_tilde"] = r;
        reals.push_back(desc);
        for (const auto& s : res) {
            sector_rows.push_back({std::to_string(i), s.key.label(), std::to_string(s.eigenphases.size()),
                                   num(s.r_tilde), num(s.unitarity_residual)});
            for (std::size_t n = 0; n < s.eigenphases.size(); ++n)
                level_rows.push_back({std::to_string(i), s.key.label(), std::to_string(n), num(s.eigenphases[n])});
            pooled.push_back(s);
        }
    }
    if (pooled.empty())
        throw DegenerateError("no sector holds " + std::to_string(opt.min_levels) +
                              " levels after symmetry resolution; increase L");
    const SpacingHistogram h = spacing_histogram(pooled, bins);
    std::vector<std::vector<std::string>> hist_rows;
    for (std::size_t b = 0; b < h.density.size(); ++b)
        hist_rows.push_back({num(h.edges[b]), num(h.edges[b + 1]), num(h.density[b]), num(h.poisson[b]),
                             num(h.coe[b]), num(h.cue[b])});
    out.csv("sectors.csv", {"realization", "sector", "levels", "r_tilde", "unitarity_residual"}, sector_rows);
    out.csv("levels.csv", {"realization", "sector", "index", "eigenphase"}, level_rows);
    out.csv("spacing_histogram.csv", {"s_lo", "s_hi", "density", "poisson", "coe_surmise", "cue_surmise"}, hist_rows);

    double mean = 0.0;
    for (double r : per_real) mean += r;
    mean /= per_real.size();
    double var = 0.0;
    for (double r : per_real) var += (r - mean) * (r - mean);
    const double se = per_real.size() > 1 ? std::sqrt(var / (per_real.size() - 1) / per_real.size()) : 0.0;
    out.json("spectrum_stats.json", {{"L", L},
                                     {"boundary", to_string(bc)},
                                     {"circuit", kind},
                                     {"realizations", reals},
                                     {"mean_r_tilde", mean},
                                     {"standard_error", se},
                                     {"poisson_r_tilde", kPoissonRTilde},
                                     {"tv_poisson", h.tv_poisson},
                                     {"tv_coe", h.tv_coe},
                                     {"tv_cue", h.tv_cue},
                                     {"closest", h.closest()},
                                     {"spacings", h.count}});
}

// ---- rp-spectrum

void run_rp_spectrum(Context& ctx) {
    auto& p = ctx.params;
    const GateChoice g = resolve_gate(p);
    const int r = p.integer("run.r", 3, 1, kMaxLocalRange);
    const double k = p.real("run.k", 0.0);
    std::optional<int> charge;
    if (p.has("run.charge")) charge = p.integer("run.charge", 0, -kMaxLocalRange, kMaxLocalRange);
    const std::vector<int> r_list = p.has("run.r_list") ? p.int_list("run.r_list", {}) : std::vector<int>{};
    const int nthreads = threads(p);
    auto& out = ctx.open_sink();

    const RpSpectrum s = rp_spectrum(truncated_propagator(g.gate, r, k, charge, nthreads));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t b = 0; b < s.charges.size(); ++b)
        for (cplx l : s.eigenvalues[b])
            rows.push_back({num(k), std::to_string(r), std::to_string(s.charges[b]), num(l.real()), num(l.imag())});
    out.csv("rp_spectrum.csv", {"k", "r", "charge_block", "re", "im"}, rows);

    json j;
    j["gate"] = g.description;
    j["phase"] = phase_label(g.gate);
    j["k"] = k;
    j["r"] = r;
    j["spectral_radius"] = s.spectral_radius;
    j["unit_multiplicity"] = s.unit_multiplicity;
    if (s.lambda2) {
        j["lambda2"] = {{"re", s.lambda2->real()},
                        {"im", s.lambda2->imag()},
                        {"abs", std::abs(*s.lambda2)},
                        {"charge_block", s.lambda2_charge}};
    }
    const bool zero_block = !charge || *charge == 0;
    if (zero_block && std::abs(wrap_symmetric(k)) < 1e-12 && r >= 3) {
        try {
            const HaarToR m = haar_to_r(haar_params_from_gate(g.gate).params);
            const LocalOperatorSpace space = build_basis(r, 0);
            const auto known = known_charge_vectors(m.params, space);
            CMatrix kb(space.dim(), static_cast<Eigen::Index>(known.size()));
            for (std::size_t i = 0; i < known.size(); ++i) kb.col(i) = known[i];
            const CMatrix unit = unit_eigenspace(s, 0);
            if (unit.cols() > 0) {
                const auto angles = principal_angles(unit, kb);
                j["known_charge_angles"] = angles;
            }
        } catch (const Error& e) {
            j["known_charge_angles_error"] = e.what();
        }
    }
    if (!r_list.empty()) {
        const GapFit f = gap_scaling(g.gate, k, r_list, std::nullopt, nthreads);
        json pts = json::array();
        for (const auto& pt : f.points)
            pts.push_back({{"r", pt.r},
                           {"gap", pt.gap},
                           {"lambda2_abs", std::abs(pt.lambda2)},
                           {"charge_block", pt.charge},
                           {"unit_multiplicity", pt.unit_multiplicity}});
        json fit = {{"model", to_string(f.model)}, {"points", pts}, {"sse", f.sse}};
        if (f.model == GapModel::exponential) {
            fit["c"] = f.c;
            fit["rate"] = f.rate;
            fit["pinned_rate"] = f.pinned_rate;
            fit["c_pinned"] = f.c_pinned;
        } else {
            fit["intercept"] = f.intercept;
            fit["slope"] = f.slope;
        }
        j["gap_fit"] = fit;
    }
    out.json("rp_spectrum.json", j);
}

// ---- dynamics

json series_meta(const CorrelationSeries& s) {
    json j = {{"method", to_string(s.method)}};
    if (s.method == CorrelationMethod::typicality) {
        j["samples"] = s.samples;
        j["seed"] = s.seed;
    }
    return j;
}

std::vector<std::vector<std::string>> series_rows(const CorrelationSeries& s) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < s.times.size(); ++i)
        rows.push_back({std::to_string(s.times[i]), num(s.values[i]), num(s.errors[i])});
    return rows;
}

void run_szm(Context& ctx) {
    auto& p = ctx.params;
    const GateChoice g = resolve_gate(p);
    const int L = sites(p, 12, 2, kMaxSectorSites);
    const int steps = p.integer("run.steps", 200, 0, 1000000);
    const CorrelationMethod method = parse_correlation_method(p.text("run.method", "typicality"));
    TypicalityOptions opt;
    opt.samples = p.integer("run.samples", 20, 2, 1000000);
    opt.seed = seed(p);
    opt.threads = threads(p);
    auto& out = ctx.open_sink();

    const CorrelationSeries s = boundary_autocorrelation(g.gate, L, steps, method, opt);
    out.csv("szm.csv", {"t", "value", "err"}, series_rows(s));
    double tail = 0.0;
    int n = 0;
    for (std::size_t i = s.times.size() * 3 / 4; i < s.times.size(); ++i, ++n) tail += s.values[i];
    json j = series_meta(s);
    j["gate"] = g.description;
    j["phase"] = phase_label(g.gate);
    j["L"] = L;
    j["steps"] = steps;
    j["boundary"] = "open";
    j["late_time_mean"] = n ? tail / n : s.values.front();
    j["final_value"] = s.values.back();
    out.json("szm.json", j);
}

void run_staggered(Context& ctx) {
    auto& p = ctx.params;
    const GateChoice g = resolve_gate(p);
    const int L = sites(p, 12, 4, kMaxSectorSites);
    const int steps = p.integer("run.steps", 200, 0, 1000000);
    const CorrelationMethod method =
        parse_correlation_method(p.text("run.method", L <= kMaxDenseSites ? "exact-trace" : "typicality"));
    TypicalityOptions opt;
    opt.samples = p.integer("run.samples", 20, 2, 1000000);
    opt.seed = seed(p);
    opt.threads = threads(p);
    auto& out = ctx.open_sink();

    const StaggeredResult r = staggered_correlation(g.gate, L, steps, method, opt);
    out.csv("staggered.csv", {"t", "value", "err"}, series_rows(r.series));
    json j = series_meta(r.series);
    j["gate"] = g.description;
    j["phase"] = phase_label(g.gate);
    j["L"] = L;
    j["steps"] = steps;
    j["boundary"] = "periodic";
    if (steps >= 40) {
        j["fit"] = {{"t_min", r.fit.t_min},
                    {"t_max", r.fit.t_max},
                    {"power_law", {{"amplitude", r.fit.power_law.amplitude},
                                   {"exponent", r.fit.power_law.exponent},
                                   {"sse", r.fit.power_law.sse},
                                   {"converged", r.fit.power_law.converged}}},
                    {"exponential", {{"amplitude", r.fit.exponential.amplitude},
                                     {"rate", r.fit.exponential.exponent},
                                     {"sse", r.fit.exponential.sse},
                                     {"converged", r.fit.exponential.converged}}},
                    {"sse_ratio", r.fit.sse_ratio}};
    }
    out.json("staggered.json", j);
}

void run_domain_wall(Context& ctx) {
    auto& p = ctx.params;
    const GateChoice g = resolve_gate(p);
    const int L = sites(p, 12, 2, kMaxMatrixFreeSites);
    const int steps = p.integer("run.steps", 200, 0, 1000000);
    const Boundary bc = boundary(p, "open");
    auto& out = ctx.open_sink();

    const DomainWallResult r = domain_wall_evolution(g.gate, L, steps, bc);
    std::vector<std::vector<std::string>> prof, moved;
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        for (int j = 0; j < L; ++j) prof.push_back({std::to_string(r.times[i]), std::to_string(j), num(r.profiles[i][j])});
        moved.push_back({std::to_string(r.times[i]), num(r.transported[i])});
    }
    out.csv("domain_wall_profile.csv", {"t", "site", "sz"}, prof);
    out.csv("domain_wall_transport.csv", {"t", "delta_m"}, moved);
    out.json("domain_wall.json", {{"gate", g.description},
                                  {"phase", phase_label(g.gate)},
                                  {"L", L},
                                  {"steps", steps},
                                  {"boundary", to_string(bc)},
                                  {"final_delta_m", r.transported.back()},
                                  {"max_delta_m", *std::max_element(r.transported.begin(), r.transported.end())},
                                  {"max_sector_leak", r.max_sector_leak}});
}

// ---- time-reversal

void run_time_reversal(Context& ctx) {
    auto& p = ctx.params;
    const int L = sites(p, 8, 4, kMaxDenseSites);
    const Boundary bc = boundary(p, "open");
    const int circuits = p.integer("run.circuits", 20, 1, 100000);
    const std::uint64_t root = seed(p);
    if (L % 2) throw ParameterError("L must be even");
    auto& out = ctx.open_sink();

    std::vector<std::vector<std::string>> rows;
    double max_spec = 0.0, max_tr = 0.0;
    int refused = 0;
    for (int i = 0; i < circuits; ++i) {
        HaarSampler sampler(derive_seed(root, static_cast<std::uint64_t>(i)));
        std::vector<TwoQubitGate> odd, even;
        for (int j = 0; j < L / 2; ++j) odd.push_back(gate_from_haar(sampler.next()));
        const int ne = bc == Boundary::periodic ? L / 2 : L / 2 - 1;
        for (int j = 0; j < ne; ++j) even.push_back(gate_from_haar(sampler.next()));
        const BrickworkCircuit c = BrickworkCircuit::brickwork(L, bc, odd, even);
        const AngleDefect defect = angle_defect(c);
        try {
            const AntiUnitary t = global_time_reversal(c);
            const BrickworkCircuit eq = equivalent_circuit(c);
            const CMatrix u = build_propagator(c).entries;
            const CMatrix ut = build_propagator(eq).entries;
            const double spec = spectral_match_error(eigenvalues(u), eigenvalues(ut));
            const double tr = max_abs(t.conjugate(ut) - ut.adjoint());
            max_spec = std::max(max_spec, spec);
            max_tr = std::max(max_tr, tr);
            rows.push_back({std::to_string(i), "built", num(defect.mod_2pi), num(spec), num(tr), ""});
        } catch (const SymmetryError& e) {
            ++refused;
            rows.push_back({std::to_string(i), "refused", num(defect.mod_2pi), "", "", num(e.measured())});
        }
    }
    out.csv("time_reversal.csv",
            {"circuit", "status", "angle_defect", "spectral_mismatch", "reversal_residual", "reported_defect"}, rows);
    out.json("time_reversal.json", {{"L", L},
                                    {"boundary", to_string(bc)},
                                    {"circuits", circuits},
                                    {"refused", refused},
                                    {"max_spectral_mismatch", max_spec},
                                    {"max_reversal_residual", max_tr}});
}

}  // namespace

std::vector<CommandSpec> command_specs() {
    return {
        {"classify", "phase of a gate, with the closed-form test for Hamiltonian gates",
         true, {}, run_classify},
        {"map-params", "Haar parameters and R-matrix parameters of a gate", true, {}, run_map_params},
        {"verify-ybe",
         "Yang-Baxter, inversion and reconstruction residuals over Haar-random gates",
         true,
         {{"run.trials", "--trials", "number of random gates"}, {"run.tolerance", "--tolerance", "pass threshold"}},
         run_verify_ybe},
        {"charges",
         "conserved charges on a ring and their commutator with the propagator",
         true,
         {{"run.L", "--L", "sites"}, {"run.ell", "--ell", "charge order"}},
         run_charges},
        {"spectrum-stats",
         "level statistics of homogeneous or two-gate circuits",
         true,
         {{"run.L", "--L", "sites"},
          {"run.boundary", "--boundary", "open or periodic"},
          {"run.circuit", "--circuit", "homogeneous or two-gate"},
          {"run.realizations", "--realizations", "two-gate disorder realizations"},
          {"run.momentum", "--momentum", "resolve momentum (true/false)"},
          {"run.spacetime", "--spacetime", "resolve the space-time symmetry (true/false)"},
          {"run.reflection", "--reflection", "resolve reflection with spin flip (true/false)"},
          {"run.bins", "--bins", "histogram bins"}},
         run_spectrum_stats},
        {"rp-spectrum",
         "truncated operator propagator spectrum and gap scaling",
         true,
         {{"run.r", "--r", "operator range"},
          {"run.k", "--k", "momentum"},
          {"run.charge", "--charge", "single charge block"},
          {"run.r_list", "--r-list", "ranges for the gap fit, e.g. 3,5"}},
         run_rp_spectrum},
        {"szm",
         "boundary autocorrelation on an open chain",
         true,
         {{"run.L", "--L", "sites"},
          {"run.steps", "--steps", "circuit steps"},
          {"run.method", "--method", "exact-trace or typicality"},
          {"run.samples", "--samples", "typicality vectors"}},
         run_szm},
        {"staggered-corr",
         "staggered magnetization autocorrelation on a ring",
         true,
         {{"run.L", "--L", "sites"},
          {"run.steps", "--steps", "circuit steps"},
          {"run.method", "--method", "exact-trace or typicality"},
          {"run.samples", "--samples", "typicality vectors"}},
         run_staggered},
        {"domain-wall",
         "magnetization profile after a domain-wall quench",
         true,
         {{"run.L", "--L", "sites"},
          {"run.steps", "--steps", "circuit steps"},
          {"run.boundary", "--boundary", "open or periodic"}},
         run_domain_wall},
        {"time-reversal",
         "time reversal of random disordered circuits",
         false,
         {{"run.L", "--L", "sites"},
          {"run.boundary", "--boundary", "open or periodic"},
          {"run.circuits", "--circuits", "number of random circuits"}},
         run_time_reversal},
    };
}

}  // namespace brickwall::cli
