/*
   Copyright 2026 The tclsim Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tcl/dynamics.hpp"
#include "tcl/model.hpp"
#include "tcl/spectral.hpp"

namespace tcl {

inline constexpr const char* kToolVersion = "0.1.0";

/// Plain key=value configuration ('#' starts a comment, blank lines ignored).
struct Config {
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback = "") const;
};

Config parse_config(std::istream& in);
Config load_config(const std::string& path);

/// Numeric list syntax used by grid keys: either comma separated values
/// ("0,0.5,1") or an inclusive range "start:stop:step".
std::vector<double> parse_number_list(const std::string& text);

double parse_double(const std::string& text, const std::string& key);
long parse_long(const std::string& text, const std::string& key);

/// Formats a double with enough digits to round-trip, '.' decimal point.
std::string format_number(double v);

/// `#`-prefixed comment block echoing the tool version, the command line and
/// every parameter, so each CSV is self-describing.
void write_csv_preamble(std::ostream& out, const std::string& command_line,
                        const std::vector<std::pair<std::string, std::string>>& parameters);

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

/// Empirical trajectory with the master-equation columns side by side.
void write_mc_trajectory_csv(std::ostream& out, const Trajectory& mc, const Trajectory& me);

/// Schema: index,re_Lambda,im_Lambda,re_lambda,im_lambda,family
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

/// Row-major matrix dump, schema: row,col,value
void write_matrix_csv(std::ostream& out, const Matrix& matrix);

}  // namespace tcl
