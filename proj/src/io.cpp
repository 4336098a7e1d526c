#include "gpe/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gpe::io {

using nlohmann::json;

void write_field(const std::string& path, const ComplexField& field, bool single_precision) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("write_field: cannot open " + path);
    const Grid& g = field.grid();
    json header;
    header["dim"] = g.dim();
    header["axes"] = json::array();
    for (int d = 0; d < g.dim(); ++d)
        header["axes"].push_back({{"a", g.axis(d).a}, {"b", g.axis(d).b}, {"m", g.axis(d).m}});
    header["dtype"] = single_precision ? "complex64" : "complex128";
    header["order"] = "x-major";
    out << header.dump() << "\n";
    if (single_precision) {
        std::vector<float> buf;
        buf.reserve(field.values().size() * 2);
        for (const cdouble& z : field.values()) {
            buf.push_back(float(z.real()));
            buf.push_back(float(z.imag()));
        }
        out.write(reinterpret_cast<const char*>(buf.data()),
                  std::streamsize(buf.size() * sizeof(float)));
    } else {
        out.write(reinterpret_cast<const char*>(field.values().data()),
                  std::streamsize(field.values().size() * sizeof(cdouble)));
    }
    if (!out) throw std::ios_base::failure("write_field: short write to " + path);
}

ComplexField read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("read_field: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::ios_base::failure("read_field: missing header");
    json header = json::parse(line);
    std::vector<Axis> axes;
    for (const auto& ax : header.at("axes"))
        axes.push_back(Axis{ax.at("a").get<double>(), ax.at("b").get<double>(),
                            ax.at("m").get<int>()});
    if (int(axes.size()) != header.at("dim").get<int>())
        throw InvalidInput("read_field: dim/axes mismatch in " + path);
    Grid grid(axes);
    ComplexField field(grid);
    const std::string dtype = header.at("dtype").get<std::string>();
    const std::size_t n = grid.node_count();
    if (dtype == "complex128") {
        in.read(reinterpret_cast<char*>(field.values().data()),
                std::streamsize(n * sizeof(cdouble)));
    } else if (dtype == "complex64") {
        std::vector<float> buf(n * 2);
        in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size() * sizeof(float)));
        for (std::size_t i = 0; i < n; ++i)
            field.values()[i] = cdouble{double(buf[2 * i]), double(buf[2 * i + 1])};
    } else {
        throw InvalidInput("read_field: unsupported dtype " + dtype);
    }
    if (!in) throw std::ios_base::failure("read_field: short read from " + path);
    field.zero_boundary();
    return field;
}

namespace {

void append_number(std::ostringstream& os, double v) {
    os.precision(17);
    os << v;
}

} // namespace

std::string csv_header(int dim) {
    std::string h = "t,N,E_total,E_kin,E_pot,E_int,E_rot,E_dip,E_jj,mu,delta_x,delta_y,delta_z";
    for (int d = 1; d <= dim; ++d) h += ",xc_" + std::to_string(d);
    h += ",Lz";
    return h;
}

std::string csv_row(const ObservableRecord& rec, int dim) {
    std::ostringstream os;
    append_number(os, rec.t);
    for (double v : {rec.mass, rec.energy.total, rec.energy.kinetic, rec.energy.potential,
                     rec.energy.interaction, rec.energy.rotation, rec.energy.dipolar,
                     rec.energy.josephson, rec.mu, rec.widths[0], rec.widths[1], rec.widths[2]}) {
        os << ',';
        append_number(os, v);
    }
    for (int d = 0; d < dim; ++d) {
        os << ',';
        append_number(os, rec.xc[std::size_t(d)]);
    }
    os << ',';
    append_number(os, rec.lz);
    return os.str();
}

void write_observables_csv(const std::string& path, const std::vector<ObservableRecord>& recs,
                           int dim) {
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("write_observables_csv: cannot open " + path);
    out << csv_header(dim) << "\n";
    for (const ObservableRecord& r : recs) out << csv_row(r, dim) << "\n";
    if (!out) throw std::ios_base::failure("write_observables_csv: short write");
}

} // namespace gpe::io
