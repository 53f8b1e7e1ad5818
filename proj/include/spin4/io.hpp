#pragma once

#include <array>
#include <charconv>
#include <cstddef>
#include <string>
#include <system_error>
#include <vector>

#include "spin4/gates.hpp"
#include "spin4/stabilizer.hpp"

namespace spin4 {

/// Locale-independent decimal form with 17 significant digits, enough to
/// round-trip any double exactly so traces compare bit-for-bit across tools.
inline std::string format_double(double x) {
    std::array<char, 64> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                   std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

namespace detail {

inline void append_row(std::string& out, const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out.push_back(',');
        out += format_double(values[i]);
    }
    out.push_back('\n');
}

inline std::string json_array(const std::vector<double>& values) {
    std::string s = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) s.push_back(',');
        s += format_double(values[i]);
    }
    s.push_back(']');
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// scenario traces

inline std::string scenario_trace_csv(const ScenarioTrace& trace) {
    std::string out = "t_ns,p_dd,p_du,p_ud,p_uu,fidelity\n";
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        detail::append_row(out, {trace.times[i], trace.prob[0][i], trace.prob[1][i],
                                 trace.prob[2][i], trace.prob[3][i], trace.fidelity[i]});
    return out;
}

inline std::string scenario_trace_json(const ScenarioTrace& trace) {
    std::string out = "{\n";
    out += "  \"scenario\": \"" + std::string(scenario_name(trace.scenario)) + "\",\n";
    out += "  \"frame\": \"" + std::string(trace.frame == Frame::lab ? "lab" : "rotating") +
           "\",\n";
    out += "  \"t_ns\": " + detail::json_array(trace.times) + ",\n";
    out += "  \"p_dd\": " + detail::json_array(trace.prob[0]) + ",\n";
    out += "  \"p_du\": " + detail::json_array(trace.prob[1]) + ",\n";
    out += "  \"p_ud\": " + detail::json_array(trace.prob[2]) + ",\n";
    out += "  \"p_uu\": " + detail::json_array(trace.prob[3]) + ",\n";
    out += "  \"fidelity\": " + detail::json_array(trace.fidelity) + "\n";
    out += "}\n";
    return out;
}

// ---------------------------------------------------------------------------
// gate scans

inline std::string gate_scan_csv(const GateScan& scan) {
    std::string out = "t_ns,p_1,p_2,p_3,p_4\n";
    for (std::size_t i = 0; i < scan.times.size(); ++i)
        detail::append_row(out, {scan.times[i], scan.prob[0][i], scan.prob[1][i],
                                 scan.prob[2][i], scan.prob[3][i]});
    return out;
}

inline std::string gate_scan_json(const GateScan& scan) {
    std::string out = "{\n";
    out += "  \"ancilla_n\": " + std::to_string(scan.ancilla_index) + ",\n";
    out += "  \"t_ns\": " + detail::json_array(scan.times) + ",\n";
    for (int l = 1; l <= 4; ++l)
        out += "  \"p_" + std::to_string(l) +
               "\": " + detail::json_array(scan.prob[static_cast<std::size_t>(l - 1)]) +
               (l < 4 ? ",\n" : "\n");
    out += "}\n";
    return out;
}

// ---------------------------------------------------------------------------
// spectra

struct SpectrumRow {
    int index;          // k, 1..16
    double energy;      // analytic h_k (resonant) or sorted numeric eigenvalue
    double deviation;   // against the independent diagonalization route
};

inline std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
    std::string out = "k,energy,oracle_deviation\n";
    for (const auto& r : rows) {
        out += std::to_string(r.index);
        out.push_back(',');
        out += format_double(r.energy);
        out.push_back(',');
        out += format_double(r.deviation);
        out.push_back('\n');
    }
    return out;
}

inline std::string spectrum_json(const std::vector<SpectrumRow>& rows) {
    std::string out = "{\n  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out += "    {\"k\": " + std::to_string(rows[i].index) +
               ", \"energy\": " + format_double(rows[i].energy) +
               ", \"oracle_deviation\": " + format_double(rows[i].deviation) + "}";
        out += (i + 1 < rows.size()) ? ",\n" : "\n";
    }
    out += "  ]\n}\n";
    return out;
}

// ---------------------------------------------------------------------------
// gate matrices

inline std::string gate_matrix_report(const DataGate& g) {
    std::string out;
    out += "gate U^" + std::to_string(g.ancilla_index) +
           " extracted at t~ = " + format_double(g.extraction_time) + " ns\n";
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            out += (c ? "  " : "  ");
            out += "(" + format_double(g.matrix(r, c).real()) + "," +
                   format_double(g.matrix(r, c).imag()) + ")";
        }
        out.push_back('\n');
    }
    return out;
}

}  // namespace spin4
