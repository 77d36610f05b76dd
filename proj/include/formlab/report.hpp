#pragma once

#include <string>
#include <vector>

namespace formlab {

/// One identity checked over a sampling grid.
///
/// Diagnostic rows (gating == false) are recorded alongside the rest
/// but never decide an overall verdict; they exist to document which of
/// two competing predictions the numerics support.
struct IdentityRow {
    std::string surface;
    std::string identity_id;
    std::string grid;
    double max_error = 0.0;
    double tol = 0.0;
    bool pass = false;
    bool gating = true;
};

std::string json_escape(const std::string& s);

/// %.12g rendering used for every number the toolkit prints.
std::string real_str(double x);

/// Quotes a CSV field when it holds a comma, quote, or newline.
std::string csv_field(const std::string& s);

std::string rows_to_json(const std::vector<IdentityRow>& rows);
std::string rows_to_csv(const std::vector<IdentityRow>& rows);

} // namespace formlab
