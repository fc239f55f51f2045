#pragma once

#include <array>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rydspec/coupling.hpp"
#include "rydspec/io/format.hpp"
#include "rydspec/ladder.hpp"
#include "rydspec/spectrum.hpp"

namespace rydspec::io {

// All CSV output: header line, '.' decimal separator, LF line endings,
// detunings and eigenvalues expressed in ordinary frequency (Hz).

inline void write_spectrum_csv(std::ostream& os, const SpectrumTrace& trace) {
    os << "coupling_detuning_hz,transmission\n";
    for (std::size_t i = 0; i < trace.coupling_detunings.size(); ++i)
        os << fmt_double(trace.coupling_detunings[i] / two_pi) << ','
           << fmt_double(trace.transmission[i]) << '\n';
}

inline void write_angle_map_csv(std::ostream& os, const AngleScanMap& map) {
    os << "theta_deg,coupling_detuning_hz,transmission\n";
    for (std::size_t t = 0; t < map.thetas.size(); ++t) {
        const double deg = map.thetas[t] * 180.0 / std::numbers::pi;
        const SpectrumTrace& tr = map.traces[t];
        for (std::size_t i = 0; i < tr.coupling_detunings.size(); ++i)
            os << fmt_double(deg) << ',' << fmt_double(tr.coupling_detunings[i] / two_pi) << ','
               << fmt_double(tr.transmission[i]) << '\n';
    }
}

inline void write_eigen_csv(std::ostream& os, const EigenReport& rep) {
    os << "eigenvalue_hz,multiplicity\n";
    for (std::size_t i = 0; i < rep.distinct_values.size(); ++i)
        os << fmt_double(rep.distinct_values[i] / two_pi) << ',' << rep.multiplicities[i] << '\n';
}

inline void write_centers_csv(std::ostream& os,
                              const std::vector<std::array<double, 3>>& rows) {
    os << "theta_deg,center_low_hz,center_high_hz\n";
    for (const auto& r : rows)
        os << fmt_double(r[0]) << ',' << fmt_double(r[1]) << ',' << fmt_double(r[2]) << '\n';
}

// Two-column numeric CSV (header required, extra columns rejected).
inline std::pair<std::vector<double>, std::vector<double>> read_xy_csv(std::istream& is) {
    std::pair<std::vector<double>, std::vector<double>> xy;
    std::string line;
    bool header = true;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (header) {
            header = false;
            continue;
        }
        std::istringstream row(line);
        std::string a, b, extra;
        if (!std::getline(row, a, ',') || !std::getline(row, b, ','))
            throw DomainError("CSV line " + std::to_string(lineno) + ": expected two columns");
        if (std::getline(row, extra, ','))
            throw DomainError("CSV line " + std::to_string(lineno) + ": expected two columns");
        try {
            std::size_t pa = 0, pb = 0;
            const double xv = std::stod(a, &pa);
            const double yv = std::stod(b, &pb);
            if (pa != a.size() || pb != b.size())
                throw std::invalid_argument("trailing junk");
            xy.first.push_back(xv);
            xy.second.push_back(yv);
        } catch (const std::exception&) {
            throw DomainError("CSV line " + std::to_string(lineno) + ": malformed number");
        }
    }
    if (xy.first.empty())
        throw DomainError("CSV contains no data rows");
    return xy;
}

} // namespace rydspec::io
