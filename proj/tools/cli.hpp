// Command-line front end. Kept in a header so the test suite can drive the
// commands in-process with captured streams.
#pragma once

#include "framecraft/framecraft.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

namespace framecraft::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInfeasible = 2, kNoConvergence = 3 };

inline int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::infeasible:
        case ErrorKind::infeasible_tight:
        case ErrorKind::degenerate_polar:
        case ErrorKind::no_descent:
        case ErrorKind::step_too_large:
            return kInfeasible;
        case ErrorKind::no_convergence:
            return kNoConvergence;
        default:
            return kUsage;
    }
}

inline std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        char* end = nullptr;
        const double v = std::strtod(item.c_str(), &end);
        require(end != item.c_str() && *end == '\0' && std::isfinite(v), "cannot parse number '" + item + "'");
        out.push_back(v);
    }
    require(!out.empty(), "empty list");
    return out;
}

/// --tol wins, then FRAMECRAFT_TOL, then 1e-10.
inline double resolve_tolerance(std::optional<double> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("FRAMECRAFT_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        require(end != env && *end == '\0' && v > 0.0, "FRAMECRAFT_TOL must be a positive number");
        return v;
    }
    return 1e-10;
}

inline Json rvec_json(const RVec& v) { return Json(to_std(v)); }

struct Options {
    std::string kind;
    std::string a;
    std::string lambda;
    std::size_t d = 0;
    std::size_t n = 1;
    std::string f = "bf";
    std::string in;
    std::string target;
    std::string out;
    std::string constraint = "B";
    std::optional<double> tol;
    std::uint64_t seed = 0;
    std::size_t samples = 1000;
    double radius = 1e-2;
    bool verify = false;
};

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    void emit(const Json& j, const std::string& path) {
        if (path.empty()) out_ << j.dump(2) << '\n';
        else write_json_file(path, j);
    }

    int design(const Options& o) {
        Frame frame;
        Spectrum expected;
        RVec expected_norms;
        if (o.kind == "schur-horn") {
            const NormProfile a(make_rvec(parse_list(o.a)));
            const Spectrum lambda(make_rvec(parse_list(o.lambda)));
            frame = schur_horn_frame(lambda, a);
            expected = lambda;
            expected_norms = a.values();
        } else if (o.kind == "cgu-minimizer") {
            const NormProfile a(make_rvec(parse_list(o.a)));
            require(o.d >= 1, "--d is required");
            const CyclicUnitaryGroup group = o.in.empty() ? CyclicUnitaryGroup::block_shift(o.n, o.d)
                                                          : CyclicUnitaryGroup(matrix_from_json(read_json_file(o.in)), o.n);
            require(group.dim() == o.d, "generator dimension differs from --d");
            frame = cgu_minimizer(group, a);
            const NormProfile b = repeated_profile(a, o.n);
            expected = constrained_minimal_vector(b, o.d);
            expected_norms = b.values();
        } else {
            const NormProfile a(make_rvec(parse_list(o.a)));
            require(o.d >= 1, "--d is required");
            if (o.kind == "tight") {
                frame = tight_frame(a, o.d);
                expected = uniform_minimal_vector(a.total(), o.d);
            } else {
                frame = minimizer_frame(a, o.d);
                expected = constrained_minimal_vector(a, o.d);
            }
            expected_norms = a.values();
        }
        Json j = frame_to_json(frame);
        if (o.verify) {
            const RVec sp = spectrum(frame_operator(frame)).values();
            const double norm_err = (frame.squared_norms() - expected_norms).cwiseAbs().maxCoeff();
            const double spec_err = (sp - expected.values()).cwiseAbs().maxCoeff();
            const double scale = std::max(1.0, expected.values().cwiseAbs().maxCoeff());
            j["verification"] = {{"spectrum", rvec_json(sp)},
                                 {"expected_spectrum", rvec_json(expected.values())},
                                 {"spectrum_max_error", spec_err},
                                 {"norms_max_error", norm_err},
                                 {"passed", norm_err <= 1e-9 * scale && spec_err <= 1e-8 * scale}};
        }
        emit(j, o.out);
        return kOk;
    }

    int potential(const Options& o) {
        const Potential f = Potential::parse(o.f);
        const Frame frame = frame_from_json(read_json_file(o.in));
        const double value = eval_potential(f, frame);
        const double c = frame.total_squared_norm();
        auto attained = [&](double bound) { return std::abs(value - bound) <= 1e-9 * std::max(1.0, std::abs(bound)); };

        Json j{{"potential", f.name()}, {"value", value}, {"d", frame.dim()}, {"m", frame.size()}};
        if (f.name() == "bf") j["welch_ratio"] = welch_ratio(frame);
        Json bounds = Json::object();
        if (c > 0.0) {
            const PotentialBounds b = potential_bounds_simplex(f, c, frame.dim());
            bounds["trace"] = {{"lower", b.lower}, {"upper", b.upper}, {"attained", attained(b.lower)}};
        }
        const RVec norms = frame.squared_norms();
        bool attained_norms = false;
        if ((norms.array() > 0.0).all() && frame.dim() <= frame.size()) {
            const PotentialBounds b = potential_bounds_profile(f, NormProfile::from_unsorted(norms), frame.dim());
            attained_norms = attained(b.lower);
            bounds["norms"] = {{"lower", b.lower}, {"upper", b.upper}, {"attained", attained_norms}};
        }
        j["bounds"] = bounds;
        j["attained"] = attained_norms;
        emit(j, o.out);
        return kOk;
    }

    int bound(const Options& o) {
        const Potential f = Potential::parse(o.f);
        const NormProfile a(make_rvec(parse_list(o.a)));
        require(o.d >= 1, "--d is required");
        Json j{{"potential", f.name()}, {"d", o.d}};
        if (o.n > 1) {
            const CguIrregularity irr = cgu_irregularity(a, o.d, o.n);
            const PotentialBounds b = cgu_potential_bounds(f, a, o.d, o.n);
            j.update({{"n", o.n}, {"r", irr.r}, {"r0", irr.r0}, {"lower", b.lower}, {"upper", b.upper}});
        } else {
            const PotentialBounds b = potential_bounds_profile(f, a, o.d);
            j.update({{"r", d_irregularity(a, o.d)},
                      {"minimal_spectrum", rvec_json(constrained_minimal_vector(a, o.d).values())},
                      {"lower", b.lower},
                      {"upper", b.upper}});
        }
        emit(j, o.out);
        return kOk;
    }

    int perturb(const Options& o) {
        const Frame frame = frame_from_json(read_json_file(o.in));
        const CMat target = matrix_from_json(read_json_file(o.target));
        Json j;
        if (o.kind == "polar") {
            const Frame g = polar_transport(frame, target);
            j = {{"frame", frame_to_json(g)}, {"distance", vv_distance(frame, g)}};
        } else {
            try {
                const TransportResult r = norm_preserving_transport(frame, target, resolve_tolerance(o.tol));
                j = {{"frame", frame_to_json(r.frame)},
                     {"distance", vv_distance(frame, r.frame)},
                     {"report", report_to_json(r.report)}};
                if (r.report.reducible) j["warning"] = "reducible";
            } catch (const SectionSolveError& e) {
                Json report = report_to_json(e.report());
                if (!is_irreducible(frame)) report["warning"] = "reducible";
                out_ << Json{{"report", report}}.dump(2) << '\n';
                err_ << Json{{"error", to_string(e.kind())}, {"message", e.what()}, {"report", report}}.dump() << '\n';
                return kNoConvergence;
            }
        }
        emit(j, o.out);
        return kOk;
    }

    int probe(const Options& o) {
        const Potential f = Potential::parse(o.f);
        const Frame frame = frame_from_json(read_json_file(o.in));
        ProbeConstraint constraint;
        if (o.constraint == "A") constraint = TraceSet{};
        else if (o.constraint == "B") constraint = NormSet{};
        else fail(ErrorKind::invalid_input, "--constraint must be A or B");
        const ProbeResult r = local_min_probe(frame, f, constraint, o.radius, o.samples, o.seed);
        Json j{{"potential", f.name()},
               {"constraint", o.constraint},
               {"radius", o.radius},
               {"samples", o.samples},
               {"seed", o.seed},
               {"base_value", r.base_value},
               {"best_value", r.best_value},
               {"descent_found", r.descent_found},
               {"best_frame", frame_to_json(r.best_frame)}};
        emit(j, o.out);
        return kOk;
    }

    int verify(const Options& o) {
        const Frame frame = frame_from_json(read_json_file(o.in));
        const FrameBounds b = frame_bounds(frame);
        Json components = Json::array();
        for (const auto& block : orthogonal_partition(frame)) components.push_back(block);
        Json j{{"d", frame.dim()},
               {"m", frame.size()},
               {"squared_norms", rvec_json(frame.squared_norms())},
               {"spectrum", rvec_json(spectrum(frame_operator(frame)).values())},
               {"frame_bounds", {{"lower", b.lower}, {"upper", b.upper}}},
               {"is_frame", b.is_frame},
               {"tight", b.tight},
               {"irreducible", components.size() == 1},
               {"components", components}};
        if (frame.total_squared_norm() > 0.0) j["welch_ratio"] = welch_ratio(frame);
        emit(j, o.out);
        return kOk;
    }

private:
    std::ostream& out_;
    std::ostream& err_;
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"framecraft: finite frame design, potentials and perturbation"};
    app.require_subcommand(1);
    Options o;

    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", o.out, "write JSON here instead of stdout"); };

    auto* design = app.add_subcommand("design", "construct a frame");
    design->add_option("kind", o.kind, "tight | minimizer | schur-horn | cgu-minimizer")
        ->required()
        ->check(CLI::IsMember({"tight", "minimizer", "schur-horn", "cgu-minimizer"}));
    design->add_option("--a", o.a, "comma-separated squared norms, non-increasing")->required();
    design->add_option("--d", o.d, "dimension");
    design->add_option("--lambda", o.lambda, "comma-separated target spectrum (schur-horn)");
    design->add_option("--n", o.n, "group order (cgu-minimizer)");
    design->add_option("--in", o.in, "generator matrix JSON (cgu-minimizer); block shift if omitted");
    design->add_flag("--verify", o.verify, "re-check norms and spectrum");
    add_out(design);

    auto* potential = app.add_subcommand("potential", "evaluate a potential and its bounds on a frame");
    potential->add_option("--in", o.in, "frame JSON")->required();
    potential->add_option("--f", o.f, "bf | power:<n> | xlogx");
    add_out(potential);

    auto* bound = app.add_subcommand("bound", "sharp potential bounds for a norm profile");
    bound->add_option("--a", o.a, "comma-separated squared norms")->required();
    bound->add_option("--d", o.d, "dimension")->required();
    bound->add_option("--f", o.f, "bf | power:<n> | xlogx");
    bound->add_option("--n", o.n, "cyclic group order (CGU bounds when > 1)");
    add_out(bound);

    auto* perturb = app.add_subcommand("perturb", "move a frame to a target frame operator");
    perturb->add_option("kind", o.kind, "polar | norm-preserving")
        ->required()
        ->check(CLI::IsMember({"polar", "norm-preserving"}));
    perturb->add_option("--in", o.in, "frame JSON")->required();
    perturb->add_option("--target", o.target, "target operator JSON")->required();
    perturb->add_option("--tol", o.tol, "solver tolerance (default FRAMECRAFT_TOL or 1e-10)");
    add_out(perturb);

    auto* probe = app.add_subcommand("probe", "random search for potential descent near a frame");
    probe->add_option("--in", o.in, "frame JSON")->required();
    probe->add_option("--f", o.f, "bf | power:<n> | xlogx");
    probe->add_option("--constraint", o.constraint, "A (trace) or B (norms)");
    probe->add_option("--radius", o.radius, "vector-vector radius");
    probe->add_option("--samples", o.samples, "number of samples");
    probe->add_option("--seed", o.seed, "random seed");
    add_out(probe);

    auto* verify = app.add_subcommand("verify", "report spectrum, bounds and structure of a frame");
    verify->add_option("--in", o.in, "frame JSON")->required();
    add_out(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream cli_out;
        const int code = app.exit(e, cli_out, err);
        out << cli_out.str();
        return code == 0 ? kOk : kUsage;
    }

    Runner runner(out, err);
    try {
        if (*design) return runner.design(o);
        if (*potential) return runner.potential(o);
        if (*bound) return runner.bound(o);
        if (*perturb) return runner.perturb(o);
        if (*probe) return runner.probe(o);
        return runner.verify(o);
    } catch (const Error& e) {
        err << Json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump() << '\n';
        return exit_code_for(e.kind());
    } catch (const Json::exception& e) {
        err << Json{{"error", "invalid-input"}, {"message", e.what()}}.dump() << '\n';
        return kUsage;
    }
}

}  // namespace framecraft::cli
