#ifndef CONJPAIR_IO_HPP
#define CONJPAIR_IO_HPP

#include "conjpair/dtn.hpp"
#include "conjpair/verify.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace conjpair {

/// One floating-point number, 17 significant digits, diff-stable.
std::string format_double(double x);

// ---- legacy VTK ASCII ---------------------------------------------------------

using NamedFields = std::vector<std::pair<std::string, Eigen::VectorXd>>;

/// Unstructured-grid writer (cell type 10) with optional nodal and per-cell
/// scalar data.
void write_vtk(const std::string& path, const Mesh& mesh,
               const NamedFields& point_fields = {}, const NamedFields& cell_fields = {});

struct VtkPointData {
    int num_points = 0;
    std::map<std::string, Eigen::VectorXd> fields;
};

/// Read back the POINT_DATA scalars of a legacy VTK file written by write_vtk.
VtkPointData read_vtk_point_data(const std::string& path);

// ---- matrices and tables ------------------------------------------------------

void write_matrix_market(const std::string& path, const Eigen::SparseMatrix<double>& mat);
void write_matrix_market(const std::string& path, const Eigen::MatrixXd& mat);
void write_dense_csv(const std::string& path, const Eigen::MatrixXd& mat);
void write_convergence_csv(const std::string& path, const ConvergenceStudy& study);

// ---- JSON reports -------------------------------------------------------------

/// Minimal ordered JSON writer; every double goes through format_double so
/// identical runs produce byte-identical reports.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array(const std::string& key = "");
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(long long v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& field(const std::string& k, double v) { return key(k).value(v); }
    JsonWriter& field(const std::string& k, int v) { return key(k).value(v); }
    JsonWriter& field(const std::string& k, bool v) { return key(k).value(v); }
    JsonWriter& field(const std::string& k, const std::string& v) { return key(k).value(v); }
    std::string str() const { return out_; }

private:
    void separator();
    std::string out_;
    std::vector<bool> needs_comma_;
};

std::string to_json(const PairSolveReport& rep);
std::string to_json(const ResidualReport& rep);
std::string to_json(const DtnExperimentReport& rep);
std::string to_json(const ConvergenceStudy& study);

void write_text(const std::string& path, const std::string& content);

} // namespace conjpair

#endif
