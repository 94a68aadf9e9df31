#include "kratzer/model.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace kratzer {

const char* range_name(RangeId id) {
    switch (id) {
        case RangeId::R1: return "R1";
        case RangeId::R2: return "R2";
        case RangeId::R3: return "R3";
        case RangeId::R4: return "R4";
        case RangeId::R5: return "R5";
    }
    return "?";
}

double canonical_angle(RangeId range, double angle) {
    const double pi = 3.141592653589793238462643383279502884;
    if (range == RangeId::R1)
        throw NotApplicable("R1 has a unique extension, no angle");
    if (!std::isfinite(angle)) throw DomainError("extension angle must be finite");
    if (range == RangeId::R4) {
        // theta lives in [0, pi), 0 ~ pi
        double a = std::fmod(angle, pi);
        if (a < 0.0) a += pi;
        if (a == pi) a = 0.0;
        return a;
    }
    // nu / vartheta / epsilon live in (-pi/2, pi/2], endpoints identified
    double a = std::remainder(angle, pi);
    if (a <= -pi / 2.0) a = pi / 2.0;
    return a;
}

ExtensionParam ExtensionParam::make(RangeId range, double angle) {
    ExtensionParam e;
    e.range = range;
    if (range == RangeId::R1) {
        e.unique = true;
        e.angle = 0.0;
        return e;
    }
    e.unique = false;
    e.angle = canonical_angle(range, angle);
    return e;
}

RangeClass classify(const CouplingParams& p) {
    p.validate();
    RangeClass rc;
    double g2 = p.g2;
    if (g2 >= 0.75) {
        rc.id = RangeId::R1;
        rc.mu = {true, std::sqrt(g2 + 0.25)};
        rc.deficiency = {0, 0};
    } else if (g2 == 0.0) {
        rc.id = RangeId::R5;
        rc.mu = {true, 0.5};
        rc.deficiency = {1, 1};
    } else if (g2 > -0.25) {
        rc.id = RangeId::R2;
        rc.mu = {true, std::sqrt(g2 + 0.25)};
        rc.deficiency = {1, 1};
    } else if (g2 == -0.25) {
        rc.id = RangeId::R3;
        rc.mu = {true, 0.0};
        rc.deficiency = {1, 1};
    } else {
        rc.id = RangeId::R4;
        rc.mu = {false, std::sqrt(-g2 - 0.25)};
        rc.deficiency = {1, 1};
    }
    return rc;
}

void MoleculeInput::validate() const {
    if (!(mass > 0.0) || !(dissociation_energy > 0.0) ||
        !(equilibrium_separation > 0.0) || !(hbar > 0.0))
        throw DomainError("molecule constants must be positive");
    if (l < 0) throw DomainError("l must be >= 0");
}

CouplingParams molecule_couplings(const MoleculeInput& m) {
    m.validate();
    double pref = 2.0 * m.mass / (m.hbar * m.hbar);
    CouplingParams p;
    p.g1 = -2.0 * pref * m.dissociation_energy * m.equilibrium_separation;
    p.g2 = pref * m.dissociation_energy * m.equilibrium_separation *
               m.equilibrium_separation +
           double(m.l) * double(m.l + 1);
    p.k0 = 1.0;
    return p;
}

std::vector<MoleculeRecord> parse_molecule_text(const std::string& text) {
    std::vector<MoleculeRecord> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        MoleculeRecord rec;
        if (!(row >> rec.name)) continue;  // blank line
        if (!(row >> rec.mass >> rec.dissociation_energy >>
              rec.equilibrium_separation))
            throw DomainError("molecule file: malformed record at line " +
                              std::to_string(lineno));
        std::string extra;
        if (row >> extra)
            throw DomainError("molecule file: trailing fields at line " +
                              std::to_string(lineno));
        out.push_back(rec);
    }
    return out;
}

std::vector<MoleculeRecord> parse_molecule_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("molecule file: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_molecule_text(buf.str());
}

std::vector<double> potential_profile(const CouplingParams& p,
                                      const std::vector<double>& x_grid) {
    p.validate();
    std::vector<double> v;
    v.reserve(x_grid.size());
    for (double x : x_grid) {
        if (!(x > 0.0)) throw DomainError("potential_profile: x must be > 0");
        v.push_back(p.g1 / x + p.g2 / (x * x));
    }
    return v;
}

} // namespace kratzer
