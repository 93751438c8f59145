#include "efimov/observables.hpp"

#include "efimov/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <string_view>

namespace efimov::observables {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

void validate(const GasParams& gas) {
    if (!(gas.number_density > 0.0) || !std::isfinite(gas.number_density))
        throw DomainError("number density must be positive");
    if (!(gas.atom_mass > 0.0) || !std::isfinite(gas.atom_mass)) throw DomainError("atom mass must be positive");
    if (!std::isfinite(gas.scattering_length)) throw DomainError("scattering length must be finite");
    if (!(gas.c_of_a >= 0.0) || !std::isfinite(gas.c_of_a)) throw DomainError("C(a) must be non-negative");
}

double recombination_rate(const GasParams& gas) {
    validate(gas);
    const double n = gas.number_density;
    const double a2 = gas.scattering_length * gas.scattering_length;
    return gas.c_of_a * n * n * n * (hbar_si / gas.atom_mass) * a2 * a2;
}

double recombination_length(double c_of_a, double a) {
    if (!(c_of_a >= 0.0) || !std::isfinite(c_of_a)) throw DomainError("C(a) must be non-negative");
    return std::pow(2.0 * std::numbers::sqrt3 * c_of_a, 0.25) * std::abs(a);
}

double next_resonance(double a, double factor) {
    if (!(factor > 0.0)) throw DomainError("resonance spacing factor must be positive");
    return a * factor;
}

std::vector<double> resonance_ladder(double a1, double s0, int n) {
    if (!(s0 > 0.0)) throw DomainError("resonance ladder requires s0 > 0");
    if (n < 1) throw DomainError("ladder length must be at least 1");
    const double factor = std::exp(std::numbers::pi / s0);
    std::vector<double> out{a1};
    for (int i = 1; i < n; ++i) out.push_back(next_resonance(out.back(), factor));
    return out;
}

std::vector<CTableRow> read_c_table(std::istream& in, const std::string& source) {
    std::vector<CTableRow> rows;
    std::string line;
    int line_no = 0;
    bool seen_content = false;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view s = trim(line);
        if (s.empty() || s.front() == '#') continue;
        const auto comma = s.find(',');
        const std::string where = source + " line " + std::to_string(line_no);
        if (comma == std::string_view::npos || s.find(',', comma + 1) != std::string_view::npos)
            throw DomainError(where + ": expected two comma-separated columns");
        CTableRow row{};
        const bool ok = parse_double(s.substr(0, comma), row.a) && parse_double(s.substr(comma + 1), row.c_of_a);
        if (!ok) {
            if (!seen_content) {   // header row
                seen_content = true;
                continue;
            }
            throw DomainError(where + ": non-numeric value");
        }
        seen_content = true;
        if (row.c_of_a < 0.0) throw DomainError(where + ": C(a) must be non-negative");
        rows.push_back(row);
    }
    if (rows.empty()) throw DomainError(source + ": no data rows");
    return rows;
}

}  // namespace efimov::observables
