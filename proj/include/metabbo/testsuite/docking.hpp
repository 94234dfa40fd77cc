#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "metabbo/util/mat.hpp"

namespace metabbo {

// Column-wise atom storage: position (Angstrom), partial charge (e),
// Lennard-Jones well depth epsilon and radius parameter R per atom.
struct AtomSet {
    std::vector<double> x, y, z;
    std::vector<double> q;
    std::vector<double> eps;
    std::vector<double> radius;
    double dielectric = 1.0;

    int size() const { return static_cast<int>(x.size()); }
    void push(double px, double py, double pz, double pq, double pe, double pr) {
        x.push_back(px);
        y.push_back(py);
        z.push_back(pz);
        q.push_back(pq);
        eps.push_back(pe);
        radius.push_back(pr);
    }
};

// One rigid-body docking task: a fixed receptor, a ligand at its start pose,
// and six fixed unit displacement modes that give the pose vector its six
// soft flexibility coordinates.
struct DockingInstance {
    int complex_no = 0; // 0..27
    int start_no = 0;   // 0..9
    AtomSet receptor;
    AtomSet ligand;
    Mat modes; // 6 x (3 * ligand atoms), rows are unit vectors
};

// Cubic switching window that tapers pair energies between r_on = 7 A and
// r_off = 9 A: factor(7) = 1, factor(8) = 0.5, factor(9) = 0.
double switching_factor(double r);

// Energy of one atom pair at center distance r (floored at 1e-3 A):
// Coulomb + Lennard-Jones inside 7 A, switched in [7, 9], zero beyond 9 A.
// r_comb is the summed radius parameter of the two atoms, eps_comb the
// geometric-mean well depth.
double pair_energy(double r, double qq, double dielectric, double eps_comb, double r_comb);

// Interaction energy between the moved ligand copy and the receptor.
// `pose` is the 12-dim conformation vector: [0..2] Euler angles (z-y-x) about
// the ligand centroid, [3..5] translation (A), [6..11] amplitudes of the six
// displacement modes (scaled by 0.1 A each).
double docking_energy(const DockingInstance& inst, std::span<const double> pose);
double docking_energy_serial(const DockingInstance& inst, std::span<const double> pose);

// Deterministic synthetic complex builder: 50 receptor atoms in a sphere of
// radius 8 A at the origin, 20 ligand atoms in a sphere of radius 4 A offset
// along +x, reposed per start index.
DockingInstance make_docking_instance(int complex_no, int start_no, std::uint64_t seed);

// Line-oriented text serialization, one atom per line:
// "x y z q epsilon radius" in round-trippable decimal text.
std::string atoms_to_text(const AtomSet& atoms);
AtomSet atoms_from_text(const std::string& text);

} // namespace metabbo
