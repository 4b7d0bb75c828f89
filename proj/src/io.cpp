#include "conjpair/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace conjpair {

std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

void write_text(const std::string& path, const std::string& content) {
    auto out = open_out(path);
    out << content;
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_vtk(const std::string& path, const Mesh& mesh, const NamedFields& point_fields,
               const NamedFields& cell_fields) {
    auto out = open_out(path);
    out << "# vtk DataFile Version 3.0\n";
    out << "conjpair " << domain_name(mesh.domain) << " mesh\n";
    out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.num_vertices() << " double\n";
    for (int v = 0; v < mesh.num_vertices(); ++v)
        out << format_double(mesh.vertices(v, 0)) << ' ' << format_double(mesh.vertices(v, 1))
            << ' ' << format_double(mesh.vertices(v, 2)) << '\n';
    out << "CELLS " << mesh.num_tets() << ' ' << 5 * mesh.num_tets() << '\n';
    for (int e = 0; e < mesh.num_tets(); ++e)
        out << "4 " << mesh.tets(e, 0) << ' ' << mesh.tets(e, 1) << ' ' << mesh.tets(e, 2)
            << ' ' << mesh.tets(e, 3) << '\n';
    out << "CELL_TYPES " << mesh.num_tets() << '\n';
    for (int e = 0; e < mesh.num_tets(); ++e) out << "10\n";

    if (!point_fields.empty()) {
        out << "POINT_DATA " << mesh.num_vertices() << '\n';
        for (const auto& [name, values] : point_fields) {
            if (values.size() != mesh.num_vertices())
                throw DimensionError("vtk point field '" + name + "': wrong length");
            out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
            for (int i = 0; i < values.size(); ++i) out << format_double(values[i]) << '\n';
        }
    }
    if (!cell_fields.empty()) {
        out << "CELL_DATA " << mesh.num_tets() << '\n';
        for (const auto& [name, values] : cell_fields) {
            if (values.size() != mesh.num_tets())
                throw DimensionError("vtk cell field '" + name + "': wrong length");
            out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
            for (int i = 0; i < values.size(); ++i) out << format_double(values[i]) << '\n';
        }
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

VtkPointData read_vtk_point_data(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    VtkPointData data;
    std::string token;
    int point_data_count = -1;
    while (in >> token) {
        if (token == "POINTS") {
            in >> data.num_points;
        } else if (token == "POINT_DATA") {
            in >> point_data_count;
            if (point_data_count != data.num_points)
                throw IoError("vtk '" + path + "': POINT_DATA count mismatch");
        } else if (token == "SCALARS" && point_data_count > 0) {
            std::string name, type;
            in >> name >> type;
            int comps = 1;
            if (in.peek() != '\n') {
                // optional component count
                std::string rest;
                std::getline(in, rest);
                if (!rest.empty()) {
                    std::istringstream ss(rest);
                    ss >> comps;
                    if (comps == 0) comps = 1;
                }
            }
            std::string lookup, table_name;
            in >> lookup >> table_name;
            if (lookup != "LOOKUP_TABLE")
                throw IoError("vtk '" + path + "': expected LOOKUP_TABLE after SCALARS");
            if (comps != 1) throw IoError("vtk '" + path + "': only 1-component scalars");
            Eigen::VectorXd values(point_data_count);
            for (int i = 0; i < point_data_count; ++i)
                if (!(in >> values[i]))
                    throw IoError("vtk '" + path + "': truncated SCALARS block '" + name + "'");
            data.fields[name] = values;
        } else if (token == "CELL_DATA") {
            break;  // nodal data only
        }
    }
    if (data.num_points == 0) throw IoError("vtk '" + path + "': no POINTS section");
    return data;
}

void write_matrix_market(const std::string& path, const Eigen::SparseMatrix<double>& mat) {
    auto out = open_out(path);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << mat.rows() << ' ' << mat.cols() << ' ' << mat.nonZeros() << '\n';
    for (int col = 0; col < mat.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(mat, col); it; ++it)
            out << it.row() + 1 << ' ' << it.col() + 1 << ' ' << format_double(it.value())
                << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_matrix_market(const std::string& path, const Eigen::MatrixXd& mat) {
    auto out = open_out(path);
    out << "%%MatrixMarket matrix array real general\n";
    out << mat.rows() << ' ' << mat.cols() << '\n';
    for (int j = 0; j < mat.cols(); ++j)
        for (int i = 0; i < mat.rows(); ++i) out << format_double(mat(i, j)) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_dense_csv(const std::string& path, const Eigen::MatrixXd& mat) {
    auto out = open_out(path);
    for (int i = 0; i < mat.rows(); ++i) {
        for (int j = 0; j < mat.cols(); ++j) {
            if (j) out << ',';
            out << format_double(mat(i, j));
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_convergence_csv(const std::string& path, const ConvergenceStudy& study) {
    auto out = open_out(path);
    out << "level,h,error,rate\n";
    for (const auto& row : study.rows) {
        out << row.level << ',' << format_double(row.h) << ',' << format_double(row.error)
            << ',' << (std::isnan(row.rate) ? "" : format_double(row.rate)) << '\n';
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

// ---- JsonWriter ---------------------------------------------------------------

void JsonWriter::separator() {
    if (!needs_comma_.empty()) {
        if (needs_comma_.back()) out_ += ',';
        needs_comma_.back() = true;
    }
}

JsonWriter& JsonWriter::begin_object() {
    separator();
    out_ += '{';
    needs_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ += '}';
    needs_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array(const std::string& k) {
    if (!k.empty()) key(k);
    else separator();
    out_ += '[';
    needs_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ += ']';
    needs_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    separator();
    out_ += '"' + k + "\":";
    // the upcoming value must not emit another comma
    if (!needs_comma_.empty()) needs_comma_.back() = false;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    separator();
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(int v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(long long v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    separator();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    separator();
    out_ += '"';
    for (char c : v) {
        if (c == '"' || c == '\\') out_ += '\\';
        if (c == '\n') {
            out_ += "\\n";
            continue;
        }
        out_ += c;
    }
    out_ += '"';
    return *this;
}

// ---- report serializers --------------------------------------------------------

std::string to_json(const PairSolveReport& rep) {
    JsonWriter w;
    w.begin_object();
    w.field("mu", rep.mu);
    w.field("iterations", rep.iterations);
    w.field("restarts", rep.restarts);
    w.field("converged", rep.converged);
    w.begin_array("residuals");
    for (const auto& [r1, r2] : rep.residual_history) {
        w.begin_array();
        w.value(r1).value(r2);
        w.end_array();
    }
    w.end_array();
    w.end_object();
    return w.str() + "\n";
}

std::string to_json(const ResidualReport& rep) {
    JsonWriter w;
    w.begin_object();
    w.field("r1", rep.r1);
    w.field("r2", rep.r2);
    w.field("orth", rep.orth);
    w.field("det_mean", rep.det_mean);
    w.field("norm_gap", rep.norm_gap);
    w.field("r1_abs", rep.r1_abs);
    w.field("r2_abs", rep.r2_abs);
    w.field("orth_abs", rep.orth_abs);
    w.end_object();
    return w.str() + "\n";
}

std::string to_json(const DtnExperimentReport& rep) {
    JsonWriter w;
    w.begin_object();
    w.begin_array("gamma_status");
    for (size_t i = 0; i < rep.gamma_ok.size(); ++i) {
        w.begin_object();
        w.field("ok", static_cast<bool>(rep.gamma_ok[i]));
        w.field("error", rep.gamma_errors[i]);
        w.end_object();
    }
    w.end_array();
    w.begin_array("distances");
    for (int i = 0; i < rep.distances.rows(); ++i) {
        w.begin_array();
        for (int j = 0; j < rep.distances.cols(); ++j) w.value(rep.distances(i, j));
        w.end_array();
    }
    w.end_array();
    w.begin_array("pairs");
    for (const auto& cell : rep.pairs) {
        w.begin_object();
        w.field("gamma", cell.gamma_index);
        w.field("w", cell.w_index);
        w.field("ok", cell.ok);
        w.field("error", cell.error);
        w.field("mu", cell.mu);
        w.field("r1", cell.r1);
        w.field("r2", cell.r2);
        w.field("iterations", cell.iterations);
        w.field("converged", cell.converged);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str() + "\n";
}

std::string to_json(const ConvergenceStudy& study) {
    JsonWriter w;
    w.begin_object();
    w.field("fitted_rate", study.fitted_rate);
    w.field("monotone", study.monotone);
    w.begin_array("rows");
    for (const auto& row : study.rows) {
        w.begin_object();
        w.field("level", row.level);
        w.field("h", row.h);
        w.field("error", row.error);
        w.field("rate", row.rate);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str() + "\n";
}

} // namespace conjpair
