#include "ace/esri_ascii.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ace/errors.hpp"

namespace ace {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

Dem read_esri_ascii(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ModelError("esri ascii: cannot open '" + path + "'");

    int ncols = -1, nrows = -1;
    double xll = 0.0, yll = 0.0, cellsize = 0.0, nodata = -9999.0;
    bool have_nodata = false;

    // Header: keyword value pairs until the first purely numeric token.
    std::string tok;
    double first_value = 0.0;
    bool pending_value = false;
    while (in >> tok) {
        const std::string key = lower(tok);
        if (key == "ncols") {
            if (!(in >> ncols)) throw ModelError("esri ascii: bad ncols");
        } else if (key == "nrows") {
            if (!(in >> nrows)) throw ModelError("esri ascii: bad nrows");
        } else if (key == "xllcorner") {
            if (!(in >> xll)) throw ModelError("esri ascii: bad xllcorner");
        } else if (key == "yllcorner") {
            if (!(in >> yll)) throw ModelError("esri ascii: bad yllcorner");
        } else if (key == "cellsize") {
            if (!(in >> cellsize)) throw ModelError("esri ascii: bad cellsize");
        } else if (key == "nodata_value") {
            if (!(in >> nodata)) throw ModelError("esri ascii: bad nodata_value");
            have_nodata = true;
        } else {
            // First data token.
            try {
                std::size_t pos = 0;
                first_value = std::stod(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ModelError("esri ascii: unexpected token '" + tok + "'");
            }
            pending_value = true;
            break;
        }
    }
    if (ncols <= 0 || nrows <= 0 || !(cellsize > 0.0)) {
        throw ModelError("esri ascii: missing or invalid header");
    }

    Dem dem(nrows, ncols, cellsize, xll, yll);
    // ESRI rows run north to south: file row 0 is the grid's top row.
    for (int fr = 0; fr < nrows; ++fr) {
        const int r = nrows - 1 - fr;
        for (int c = 0; c < ncols; ++c) {
            double v;
            if (pending_value) {
                v = first_value;
                pending_value = false;
            } else if (!(in >> v)) {
                throw ModelError("esri ascii: truncated data section");
            }
            if (have_nodata && v == nodata) {
                dem.set_unknown(r, c);
            } else {
                dem.set(r, c, -v);  // elevation -> z-down
            }
        }
    }
    return dem;
}

void write_esri_ascii(const Dem& dem, const std::string& path, double nodata_value) {
    std::ofstream out(path);
    if (!out) throw ModelError("esri ascii: cannot write '" + path + "'");
    std::ostringstream os;
    os.precision(17);
    os << "ncols " << dem.n_cols() << "\n";
    os << "nrows " << dem.n_rows() << "\n";
    os << "xllcorner " << dem.origin_x() << "\n";
    os << "yllcorner " << dem.origin_y() << "\n";
    os << "cellsize " << dem.resolution() << "\n";
    os << "NODATA_value " << nodata_value << "\n";
    for (int fr = 0; fr < dem.n_rows(); ++fr) {
        const int r = dem.n_rows() - 1 - fr;
        for (int c = 0; c < dem.n_cols(); ++c) {
            if (c) os << ' ';
            if (!dem.known(r, c)) {
                os << nodata_value;
            } else {
                const double elev = -dem.at(r, c);
                os << (elev == 0.0 ? 0.0 : elev);  // avoid "-0"
            }
        }
        os << "\n";
    }
    out << os.str();
    if (!out) throw ModelError("esri ascii: write failed for '" + path + "'");
}

}  // namespace ace
