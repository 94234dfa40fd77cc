#include "metabbo/testsuite/docking.hpp"

#include <cmath>
#include <sstream>

#include "metabbo/util/errors.hpp"
#include "metabbo/util/rng.hpp"
#include "metabbo/util/text.hpp"

namespace metabbo {
namespace {

constexpr double kRon = 7.0;
constexpr double kRoff = 9.0;
constexpr double kMinDist = 1.0e-3;

// Transformed ligand atom positions for a pose: rotate about the centroid,
// translate, then add the mode displacements (0.1 A per amplitude unit).
std::vector<double> posed_ligand(const DockingInstance& inst, std::span<const double> pose) {
    const int n = inst.ligand.size();
    double cx = 0.0, cy = 0.0, cz = 0.0;
    for (int k = 0; k < n; ++k) {
        cx += inst.ligand.x[k];
        cy += inst.ligand.y[k];
        cz += inst.ligand.z[k];
    }
    cx /= n;
    cy /= n;
    cz /= n;

    const double ca = std::cos(pose[0]), sa = std::sin(pose[0]); // about z
    const double cb = std::cos(pose[1]), sb = std::sin(pose[1]); // about y
    const double cg = std::cos(pose[2]), sg = std::sin(pose[2]); // about x

    std::vector<double> out(static_cast<std::size_t>(3) * n);
    for (int k = 0; k < n; ++k) {
        double px = inst.ligand.x[k] - cx;
        double py = inst.ligand.y[k] - cy;
        double pz = inst.ligand.z[k] - cz;
        // Rx
        double ty = cg * py - sg * pz;
        double tz = sg * py + cg * pz;
        py = ty;
        pz = tz;
        // Ry
        double tx = cb * px + sb * pz;
        tz = -sb * px + cb * pz;
        px = tx;
        pz = tz;
        // Rz
        tx = ca * px - sa * py;
        ty = sa * px + ca * py;
        px = tx;
        py = ty;

        px += cx + pose[3];
        py += cy + pose[4];
        pz += cz + pose[5];
        for (int m = 0; m < 6; ++m) {
            const double amp = 0.1 * pose[6 + m];
            px += amp * inst.modes.at(m, 3 * k + 0);
            py += amp * inst.modes.at(m, 3 * k + 1);
            pz += amp * inst.modes.at(m, 3 * k + 2);
        }
        out[3 * k + 0] = px;
        out[3 * k + 1] = py;
        out[3 * k + 2] = pz;
    }
    return out;
}

// Energy of ligand atom k against the whole receptor (the serial inner loop
// shared by the parallel kernel and the serial reference).
double ligand_row_energy(const DockingInstance& inst, const std::vector<double>& pos, int k) {
    const AtomSet& rec = inst.receptor;
    const AtomSet& lig = inst.ligand;
    const double px = pos[3 * k + 0], py = pos[3 * k + 1], pz = pos[3 * k + 2];
    double e = 0.0;
    for (int j = 0; j < rec.size(); ++j) {
        const double dx = px - rec.x[j];
        const double dy = py - rec.y[j];
        const double dz = pz - rec.z[j];
        const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
        e += pair_energy(r, lig.q[k] * rec.q[j], rec.dielectric,
                         std::sqrt(lig.eps[k] * rec.eps[j]), lig.radius[k] + rec.radius[j]);
    }
    return e;
}

double accumulate_rows(const DockingInstance& inst, std::span<const double> pose, bool parallel) {
    if (pose.size() != 12) throw ConfigError("docking pose must have 12 coordinates");
    const std::vector<double> pos = posed_ligand(inst, pose);
    const int n = inst.ligand.size();
    std::vector<double> partial(static_cast<std::size_t>(n));
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int k = 0; k < n; ++k) partial[k] = ligand_row_energy(inst, pos, k);
    } else {
        for (int k = 0; k < n; ++k) partial[k] = ligand_row_energy(inst, pos, k);
    }
    // Fixed-order final reduction keeps the result identical for any thread
    // count and bit-equal to the serial reference.
    double total = 0.0;
    for (int k = 0; k < n; ++k) total += partial[k];
    return total;
}

} // namespace

double switching_factor(double r) {
    const double num = (kRoff - r) * (kRoff - r) * (kRoff + 2.0 * r - 3.0 * kRon);
    const double den = (kRoff - kRon) * (kRoff - kRon) * (kRoff - kRon);
    return num / den;
}

double pair_energy(double r, double qq, double dielectric, double eps_comb, double r_comb) {
    if (r < kMinDist) r = kMinDist;
    if (r > kRoff) return 0.0;
    const double ratio6 = std::pow(r_comb / r, 6.0);
    const double e = qq / (dielectric * r) + eps_comb * (ratio6 * ratio6 - ratio6);
    if (r >= kRon) return e * switching_factor(r);
    return e;
}

double docking_energy(const DockingInstance& inst, std::span<const double> pose) {
    return accumulate_rows(inst, pose, true);
}

double docking_energy_serial(const DockingInstance& inst, std::span<const double> pose) {
    return accumulate_rows(inst, pose, false);
}

DockingInstance make_docking_instance(int complex_no, int start_no, std::uint64_t seed) {
    if (complex_no < 0 || complex_no >= 28) throw ConfigError("complex index out of range [0, 28)");
    if (start_no < 0 || start_no >= 10) throw ConfigError("start index out of range [0, 10)");

    DockingInstance inst;
    inst.complex_no = complex_no;
    inst.start_no = start_no;

    // Atom layout and modes depend on the complex only; the start index adds
    // a rigid repose so the ten instances of one complex share chemistry but
    // not their initial geometry.
    Rng rng(derive_seed(seed, {0xD0C1ULL, static_cast<std::uint64_t>(complex_no)}));
    auto draw_atoms = [&rng](AtomSet& set, int count, double radius, double off_x) {
        for (int i = 0; i < count; ++i) {
            double dx = rng.normal(), dy = rng.normal(), dz = rng.normal();
            const double norm = std::sqrt(dx * dx + dy * dy + dz * dz) + 1.0e-300;
            const double rr = radius * std::cbrt(rng.uniform01());
            set.push(off_x + rr * dx / norm, rr * dy / norm, rr * dz / norm,
                     rng.uniform(-1.0, 1.0), rng.uniform(0.05, 0.2), rng.uniform(1.5, 2.5));
        }
    };
    draw_atoms(inst.receptor, 50, 8.0, 0.0);
    draw_atoms(inst.ligand, 20, 4.0, 12.0);

    inst.modes = Mat(6, 3 * inst.ligand.size());
    for (int m = 0; m < 6; ++m) {
        double norm = 0.0;
        for (int c = 0; c < inst.modes.cols; ++c) {
            const double v = rng.normal();
            inst.modes.at(m, c) = v;
            norm += v * v;
        }
        norm = std::sqrt(norm) + 1.0e-300;
        for (int c = 0; c < inst.modes.cols; ++c) inst.modes.at(m, c) /= norm;
    }

    // Repose for the start index: bake a random rigid transform into the
    // stored ligand coordinates.
    Rng pose_rng(derive_seed(seed, {0xD0C2ULL, static_cast<std::uint64_t>(complex_no),
                                    static_cast<std::uint64_t>(start_no)}));
    std::vector<double> repose(12, 0.0);
    for (int i = 0; i < 3; ++i) repose[i] = pose_rng.uniform(-3.14159265358979323846, 3.14159265358979323846);
    for (int i = 3; i < 6; ++i) repose[i] = pose_rng.uniform(-3.0, 3.0);
    const std::vector<double> pos = posed_ligand(inst, repose);
    for (int k = 0; k < inst.ligand.size(); ++k) {
        inst.ligand.x[k] = pos[3 * k + 0];
        inst.ligand.y[k] = pos[3 * k + 1];
        inst.ligand.z[k] = pos[3 * k + 2];
    }
    return inst;
}

std::string atoms_to_text(const AtomSet& atoms) {
    std::ostringstream os;
    for (int i = 0; i < atoms.size(); ++i) {
        os << fmt_g17(atoms.x[i]) << ' ' << fmt_g17(atoms.y[i]) << ' ' << fmt_g17(atoms.z[i]) << ' '
           << fmt_g17(atoms.q[i]) << ' ' << fmt_g17(atoms.eps[i]) << ' ' << fmt_g17(atoms.radius[i])
           << '\n';
    }
    return os.str();
}

AtomSet atoms_from_text(const std::string& text) {
    AtomSet set;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty()) continue;
        std::istringstream ls(t);
        std::vector<std::string> fields;
        std::string f;
        while (ls >> f) fields.push_back(f);
        if (fields.size() != 6)
            throw DataError("atom line " + std::to_string(line_no) + " has " +
                            std::to_string(fields.size()) + " fields, expected 6 (x y z q epsilon radius)");
        set.push(parse_double(fields[0], "x"), parse_double(fields[1], "y"),
                 parse_double(fields[2], "z"), parse_double(fields[3], "q"),
                 parse_double(fields[4], "epsilon"), parse_double(fields[5], "radius"));
    }
    return set;
}

} // namespace metabbo
