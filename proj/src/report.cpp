#include "formlab/report.hpp"

#include <cstdio>

namespace formlab {

std::string real_str(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(ch) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                out += buf;
            } else {
                out += ch;
            }
        }
    }
    return out;
}

std::string rows_to_json(const std::vector<IdentityRow>& rows) {
    std::string out = "[";
    for (size_t i = 0; i < rows.size(); ++i) {
        const IdentityRow& r = rows[i];
        if (i) out += ",";
        out += "\n  {\"surface\": \"" + json_escape(r.surface) + "\"";
        out += ", \"identity_id\": \"" + json_escape(r.identity_id) + "\"";
        out += ", \"grid\": \"" + r.grid + "\"";
        out += ", \"max_error\": " + real_str(r.max_error);
        out += ", \"tol\": " + real_str(r.tol);
        out += std::string(", \"pass\": ") + (r.pass ? "true" : "false") + "}";
    }
    out += "\n]";
    return out;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

std::string rows_to_csv(const std::vector<IdentityRow>& rows) {
    std::string out = "surface,identity_id,grid,max_error,tol,pass\n";
    for (const IdentityRow& r : rows) {
        out += csv_field(r.surface) + "," + csv_field(r.identity_id) + "," + r.grid + ",";
        out += real_str(r.max_error) + "," + real_str(r.tol) + ",";
        out += (r.pass ? "true" : "false");
        out += "\n";
    }
    return out;
}

} // namespace formlab
