#include "tqg/diag_csv.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tqg/text.hpp"

namespace tqg {

namespace {

constexpr const char* kHeader =
    "t,b_sob3,q_sob2,pair_norm,q_sup,grad_b_sup,bkm_integrand,bkm_integral,"
    "g_val,u_w1inf,b_l2,spectral_tail_frac";

}  // namespace

std::string diag_csv_header() { return kHeader; }

std::string diag_csv_row(const DiagnosticsRecord& r) {
    std::ostringstream out;
    out << format_double(r.t) << ',' << format_double(r.b_sob3) << ','
        << format_double(r.q_sob2) << ',' << format_double(r.pair_norm) << ','
        << format_double(r.q_sup) << ',' << format_double(r.grad_b_sup) << ','
        << format_double(r.bkm_integrand) << ',' << format_double(r.bkm_integral)
        << ',' << format_double(r.g_val) << ',' << format_double(r.u_w1inf) << ','
        << format_double(r.b_l2) << ',' << format_double(r.spectral_tail_frac);
    return out.str();
}

DiagnosticsRecord parse_diag_csv_row(const std::string& line) {
    std::vector<double> vals;
    size_t start = 0;
    while (start <= line.size()) {
        size_t comma = line.find(',', start);
        if (comma == std::string::npos) comma = line.size();
        auto v = parse_double(trim(std::string_view(line).substr(start, comma - start)));
        if (!v) throw std::runtime_error("malformed diagnostics row: " + line);
        vals.push_back(*v);
        start = comma + 1;
    }
    if (vals.size() != 12)
        throw std::runtime_error("diagnostics row must have 12 columns: " + line);
    DiagnosticsRecord r;
    r.t = vals[0];
    r.b_sob3 = vals[1];
    r.q_sob2 = vals[2];
    r.pair_norm = vals[3];
    r.q_sup = vals[4];
    r.grad_b_sup = vals[5];
    r.bkm_integrand = vals[6];
    r.bkm_integral = vals[7];
    r.g_val = vals[8];
    r.u_w1inf = vals[9];
    r.b_l2 = vals[10];
    r.spectral_tail_frac = vals[11];
    return r;
}

std::vector<DiagnosticsRecord> read_diag_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open diagnostics csv: " + path);
    std::vector<DiagnosticsRecord> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        if (first && sv == kHeader) {
            first = false;
            continue;
        }
        first = false;
        rows.push_back(parse_diag_csv_row(std::string(sv)));
    }
    return rows;
}

}  // namespace tqg
