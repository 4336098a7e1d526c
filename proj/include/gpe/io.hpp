#pragma once

#include <string>
#include <vector>

#include "gpe/grid.hpp"
#include "gpe/observables.hpp"

namespace gpe::io {

/// Field dump: one JSON header line (dim, per-axis a/b/m, dtype), newline,
/// then the flat little-endian value array over all nodes, first axis
/// slowest. dtype is complex128 by default, complex64 accepted on read.
void write_field(const std::string& path, const ComplexField& field,
                 bool single_precision = false);
ComplexField read_field(const std::string& path);

/// Observable rows with the fixed column order
/// t,N,E_total,E_kin,E_pot,E_int,E_rot,E_dip,E_jj,mu,delta_x,delta_y,delta_z,
/// xc_1..xc_d,Lz.
std::string csv_header(int dim);
std::string csv_row(const ObservableRecord& rec, int dim);
void write_observables_csv(const std::string& path, const std::vector<ObservableRecord>& recs,
                           int dim);

} // namespace gpe::io
