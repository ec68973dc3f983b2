#include "vpm/trace_io.hpp"

#include <charconv>
#include <sstream>

namespace vpm::io {

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
    out << kTraceCsvHeader << '\n';
    for (const auto& rec : trace.records) {
        out << rec.k << ',' << rec.active_index << ','
            << format_double(rec.step_norm) << ','
            << format_double(rec.residual) << ','
            << (rec.fejer_dist ? format_double(*rec.fejer_dist) : "nan")
            << '\n';
    }
}

std::string trace_csv(const RunTrace& trace) {
    std::ostringstream out;
    write_trace_csv(out, trace);
    return out.str();
}

}  // namespace vpm::io
