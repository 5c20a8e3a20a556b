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

#include "tcl/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tcl {

namespace {

std::string trim(const std::string& s) {
    size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

std::string Config::get(const std::string& key, const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

Config parse_config(std::istream& in) {
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string entry = trim(line);
        if (entry.empty()) continue;
        const size_t eq = entry.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "config line " << lineno << ": expected key=value, got '" << entry << "'";
            throw std::invalid_argument(msg.str());
        }
        const std::string key = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        if (key.empty()) {
            std::ostringstream msg;
            msg << "config line " << lineno << ": empty key";
            throw std::invalid_argument(msg.str());
        }
        cfg.values[key] = value;
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    return parse_config(in);
}

double parse_double(const std::string& text, const std::string& key) {
    try {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("value '" + text + "' for " + key + " is not a number");
    }
}

long parse_long(const std::string& text, const std::string& key) {
    try {
        size_t used = 0;
        const long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("value '" + text + "' for " + key + " is not an integer");
    }
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        // start:stop:step, inclusive of stop up to a half-step slack
        std::vector<double> parts;
        std::stringstream ss(text);
        std::string piece;
        while (std::getline(ss, piece, ':')) parts.push_back(parse_double(trim(piece), "range"));
        if (parts.size() != 3)
            throw std::invalid_argument("range '" + text + "' must be start:stop:step");
        const double start = parts[0], stop = parts[1], step = parts[2];
        if (step <= 0.0) throw std::invalid_argument("range step must be positive");
        if (stop < start) throw std::invalid_argument("range stop must be >= start");
        for (double v = start; v <= stop + 0.5 * step; v += step)
            out.push_back(std::min(v, stop));
        return out;
    }
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        const std::string token = trim(piece);
        if (token.empty()) continue;
        out.push_back(parse_double(token, "list"));
    }
    if (out.empty()) throw std::invalid_argument("empty number list '" + text + "'");
    return out;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // shortest representation that round-trips
    for (int prec = 1; prec < 17; ++prec) {
        char trial[40];
        std::snprintf(trial, sizeof(trial), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(trial, "%lf", &back);
        if (back == v) return trial;
    }
    return buf;
}

void write_csv_preamble(std::ostream& out, const std::string& command_line,
                        const std::vector<std::pair<std::string, std::string>>& parameters) {
    out << "# tclsim " << kToolVersion << "\n";
    if (!command_line.empty()) out << "# command: " << command_line << "\n";
    for (const auto& [key, value] : parameters) out << "# " << key << " = " << value << "\n";
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    out << "t,N_up,H1,C\n";
    for (long k = 0; k < trajectory.steps(); ++k) {
        out << (k + 1) << ',' << format_number(trajectory.n_up[k]) << ','
            << format_number(trajectory.h1[k]) << ',' << format_number(trajectory.c[k]) << "\n";
    }
}

void write_mc_trajectory_csv(std::ostream& out, const Trajectory& mc, const Trajectory& me) {
    if (mc.steps() != me.steps())
        throw std::invalid_argument("mc/master trajectories have different lengths");
    out << "t,N_up,H1,C,N_up_me,H1_me,C_me\n";
    for (long k = 0; k < mc.steps(); ++k) {
        out << (k + 1) << ',' << format_number(mc.n_up[k]) << ',' << format_number(mc.h1[k]) << ','
            << format_number(mc.c[k]) << ',' << format_number(me.n_up[k]) << ','
            << format_number(me.h1[k]) << ',' << format_number(me.c[k]) << "\n";
    }
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
    out << "index,re_Lambda,im_Lambda,re_lambda,im_lambda,family\n";
    for (int k = 0; k < spectrum.size(); ++k) {
        out << k << ',' << format_number(spectrum.eigenvalues[k].real()) << ','
            << format_number(spectrum.eigenvalues[k].imag()) << ','
            << format_number(spectrum.relaxation[k].real()) << ','
            << format_number(spectrum.relaxation[k].imag()) << ','
            << family_name(spectrum.family[k]) << "\n";
    }
}

void write_matrix_csv(std::ostream& out, const Matrix& matrix) {
    out << "row,col,value\n";
    for (int i = 0; i < matrix.rows(); ++i)
        for (int j = 0; j < matrix.cols(); ++j)
            out << i << ',' << j << ',' << format_number(matrix(i, j)) << "\n";
}

}  // namespace tcl
