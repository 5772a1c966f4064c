// qgi: validate scenes, compute invariants, fuzz isotopies, export diagrams.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgi/errors.hpp"
#include "qgi/isotopy_fuzz.hpp"
#include "qgi/scene.hpp"
#include "qgi/scene_io.hpp"

namespace {

enum Exit { kOk = 0, kViolations = 1, kDegenerate = 2, kInputError = 3, kInvarianceBroken = 4 };

int exit_for(const qgi::ValidationReport& v) {
    if (v.ok()) return kOk;
    return v.only_degeneracies() ? kDegenerate : kViolations;
}

qgi::Scene load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw qgi::Error(qgi::ErrorKind::ParseError, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    qgi::Scene s = qgi::parse_scene(buf.str());
    if (const char* env = std::getenv("QGI_TOLERANCE")) {
        char* end = nullptr;
        const double tol = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(tol > 0.0) || !std::isfinite(tol))
            throw qgi::Error(qgi::ErrorKind::SchemaError, "QGI_TOLERANCE must be a positive number");
        s.tolerance = tol;
    }
    return s;
}

std::vector<qgi::ProjectionAxis> axes_from(const std::string& a) {
    if (a == "all") return {std::begin(qgi::kAllAxes), std::end(qgi::kAllAxes)};
    return {static_cast<qgi::ProjectionAxis>(std::stoi(a))};
}

std::vector<qgi::MoveKind> moves_from(const std::string& list) {
    std::vector<qgi::MoveKind> out;
    std::stringstream ss(list);
    for (std::string name; std::getline(ss, name, ',');) {
        const auto k = qgi::parse_move_kind(name);
        if (!k) throw CLI::ValidationError("--moves", "unknown move kind '" + name + "'");
        out.push_back(*k);
    }
    if (out.empty()) throw CLI::ValidationError("--moves", "empty list");
    return out;
}

void print_step(const qgi::InvarianceBrokenError& e) {
    const auto& r = e.report();
    std::cerr << "invariance broken at step " << e.step() << " by " << qgi::to_string(r.move.kind) << " move";
    if (!r.move.target.empty()) std::cerr << " on '" << r.move.target << "'";
    std::cerr << "\n";
    for (const auto& v : r.violations) {
        std::cerr << "  " << qgi::to_string(v.kind) << ": " << v.detail;
        if (!v.name.empty()) std::cerr << " (" << v.name << ": " << v.before << " -> " << v.after << ")";
        std::cerr << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariants of time-like hyperlinks, surfaces and regions in R x R^3"};
    app.set_version_flag("--version", std::string(qgi::kToolVersion));
    app.require_subcommand(1);

    std::string scene_path;

    auto* validate = app.add_subcommand("validate", "Check a scene and print its validation report");
    validate->add_option("scene", scene_path, "Scene JSON file")->required();

    std::string axis = "all";
    std::optional<std::uint64_t> pregeneric_seed;
    auto* invariants = app.add_subcommand("invariants", "Compute sk, lk(l,S), nu_S and nu_R");
    invariants->add_option("scene", scene_path, "Scene JSON file")->required();
    invariants->add_option("--axis", axis, "Projection axis for lk(l,S)")
        ->check(CLI::IsMember({"0", "1", "2", "3", "all"}));
    invariants->add_option("--pregeneric", pregeneric_seed, "Apply a seeded random rotation first");

    std::size_t steps = 0;
    std::uint64_t seed = 0;
    std::string moves;
    bool until_accepted = false;
    auto* fuzz = app.add_subcommand("fuzz", "Run seeded isotopy moves and check the invariants stay put");
    fuzz->add_option("scene", scene_path, "Scene JSON file")->required();
    fuzz->add_option("--steps", steps, "Number of move attempts")->required();
    fuzz->add_option("--seed", seed, "Run seed")->required();
    fuzz->add_option("--moves", moves, "Comma-separated move kinds (default: all)");
    fuzz->add_flag("--until-accepted", until_accepted, "Count accepted moves instead of attempts");

    int plane = 3;
    std::string out_path;
    auto* diagram = app.add_subcommand("diagram", "Export the spatial link diagram as SVG");
    diagram->add_option("scene", scene_path, "Scene JSON file")->required();
    diagram->add_option("--plane", plane, "Coordinate plane")->required()->check(CLI::Range(1, 3));
    diagram->add_option("--out", out_path, "Output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kInputError;
    }

    try {
        qgi::Scene scene = load(scene_path);

        if (*validate) {
            qgi::InvariantReport r;
            r.validation = qgi::validate_scene(scene);
            std::cout << qgi::serialize_report(r);
            return exit_for(r.validation);
        }

        if (*invariants) {
            if (pregeneric_seed) scene = qgi::pregeneric(scene, *pregeneric_seed);
            const auto ax = axes_from(axis);
            qgi::InvariantReport r = qgi::compute_invariants(scene, ax);
            r.provenance.seed = pregeneric_seed;
            std::cout << qgi::serialize_report(r);
            return exit_for(r.validation);
        }

        if (*fuzz) {
            qgi::FuzzOptions opts;
            if (!moves.empty()) opts.moves = moves_from(moves);
            opts.until_accepted = until_accepted;
            const qgi::InvariantReport start = qgi::compute_invariants(scene);
            if (!start.validation.ok()) {
                std::cerr << "scene does not validate; refusing to fuzz\n";
                std::cout << qgi::serialize_report(start);
                return exit_for(start.validation);
            }
            try {
                const qgi::FuzzSummary f = qgi::fuzz(scene, steps, seed, opts);
                std::cout << qgi::serialize_fuzz_summary(f, steps);
                return kOk;
            } catch (const qgi::InvarianceBrokenError& e) {
                print_step(e);
                return kInvarianceBroken;
            }
        }

        if (*diagram) {
            const std::string svg = qgi::render_svg(scene, static_cast<qgi::Plane>(plane));
            qgi::write_file_atomic(out_path, svg);
            std::cerr << "wrote " << out_path << "\n";
            return kOk;
        }
    } catch (const qgi::Error& e) {
        std::cerr << e.what() << "\n";
        switch (e.kind()) {
            case qgi::ErrorKind::ParseError:
            case qgi::ErrorKind::SchemaError: return kInputError;
            case qgi::ErrorKind::InvarianceBroken: return kInvarianceBroken;
            default: return e.is_degeneracy() ? kDegenerate : kViolations;
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kViolations;
    }
    return kOk;
}
