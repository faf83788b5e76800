// Verification harness: each experiment instantiates one of the constructive
// claims at desk scale (randomized placements over a seeded generator),
// checks the asserted conclusion numerically and returns a deterministic
// structured report.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ccg/symmetry.hpp"

namespace ccg {

struct ExperimentConfig {
    SpaceKind space = SpaceKind::hyperbolic(2);
    int trials = 200;
    std::uint64_t seed = 20260817;
    Tolerances tolerances = default_tolerances();

    double alpha_k = 2 * pi / 3;  // opening angles of the two-component cores
    double alpha_l = 2 * pi / 3;
    double lambda = 0.4;      // hypercycle padding distance
    double disk_radius = 1.0; // ball radius scale
    double step = 1e-2;       // perturbation translation length
};

struct ExperimentFailure {
    std::uint64_t seed = 0;      // per-trial seed that reproduces the failure
    std::string description;
    std::string witness;         // offending values, formatted
};

struct ExperimentReport {
    std::string name;
    bool passed = true;          // no recorded failures
    int trials_run = 0;
    std::vector<ExperimentFailure> failures;  // capped; see metric "failures"
    std::vector<std::pair<std::string, double>> metrics;  // insertion-ordered
    std::vector<std::string> notes;
};

// Curvature of every cycle kind against independent closed forms, via
// three-point finite differences on a deterministic parameter grid.
ExperimentReport exp_cycle_curvature(const ExperimentConfig& cfg);

// Quadrilateral with three right angles: the side between the right angles
// is strictly shorter than its opposite side in the hyperbolic plane, equal
// in the flat control, with the gap vanishing as the height shrinks.
ExperimentReport exp_lambert_quadrangle(const ExperimentConfig& cfg);

// Intersections of congruent overlapping balls are centrally symmetric about
// the midpoint of the centers, in all three spaces.
ExperimentReport exp_balls_intersection(const ExperimentConfig& cfg);

// Horoball pairs: opposite ideal points give a compact symmetric lens;
// coincident or nested horoballs share their single ideal point and fall
// outside the symmetric regime.
ExperimentReport exp_paraball_cases(const ExperimentConfig& cfg);

// Small intersections of hypercycle-padded regions reduce to the facing
// single components: set equality of the intersections, plus central
// symmetry about the midpoint of the common perpendicular of the bases.
ExperimentReport exp_small_hypercycle_intersections(const ExperimentConfig& cfg);

// Two padded regions whose ideal sets share exactly one point: congruent
// boundary footprints in the conformal chart, footprint lens contained in
// the closed disk touching it only at the shared ideal point, and a
// noncompact single-ended intersection (asymmetric by parity).
ExperimentReport exp_asymptotic_footprints(const ExperimentConfig& cfg);

// Two-component construction with crossing bases: when the opening angles
// exceed a straight angle the intersection is a compact centrally symmetric
// kernel with at least four alternating arcs.
ExperimentReport exp_four_arc_construction(const ExperimentConfig& cfg);

// Sliding one region along one of its base lines monotonically opens the
// sector angle clear of both hypercycle bands and breaks the central
// symmetry of the kernel.
ExperimentReport exp_perturbation_asymmetry(const ExperimentConfig& cfg);

// Convex hull of two disks: congruent disks give a hull symmetric about the
// midpoint of the centers; incongruent disks admit no symmetry center.
ExperimentReport exp_disk_hull_union(const ExperimentConfig& cfg);

// Registry of experiment names in suite order.
std::vector<std::string> experiment_names();

// One experiment by registry name, with the same per-name seed derivation
// run_all uses. Throws unknown_experiment_error.
ExperimentReport run_experiment(const std::string& name, const ExperimentConfig& cfg);

// All experiments in fixed order, each with a seed derived from cfg.seed and
// the experiment name.
std::vector<ExperimentReport> run_all(const ExperimentConfig& cfg);

}  // namespace ccg
