#include "mabo/trace_csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace mabo {

std::string format_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

// Quantize to what the file will actually carry, so derived columns can be
// verified bit-exactly by a reader.
double quantized(double v) { return std::strtod(format_sig12(v).c_str(), nullptr); }

std::vector<double> quantized(const Eigen::VectorXd& v) {
    std::vector<double> out(v.size());
    for (int i = 0; i < v.size(); ++i) out[i] = quantized(v[i]);
    return out;
}

void header_vector(std::ostream& os, const std::string& name, int dim) {
    if (dim == 1) {
        os << ',' << name;
    } else {
        for (int c = 0; c < dim; ++c) os << ',' << name << '_' << (c + 1);
    }
}

void emit_vector(std::ostream& os, const std::vector<double>& v) {
    for (double x : v) os << ',' << format_sig12(x);
}

}  // namespace

void write_trace_csv(const RunTrace& trace, std::ostream& os) {
    const int N = trace.n_agents;
    const int d = trace.dim;

    os << 'k';
    header_vector(os, "x0", d);
    os << ",r,s";
    for (int i = 1; i <= N; ++i) {
        header_vector(os, "x" + std::to_string(i), d);
        header_vector(os, "lambda" + std::to_string(i), d);
        os << ",y" << i;
    }
    os << '\n';

    std::vector<double> prev_x0;
    for (const IterationRecord& rec : trace.iterations) {
        std::vector<double> x0 = quantized(rec.x0);
        std::vector<double> x0_prev = rec.k == 0 ? quantized(rec.x0_prev) : prev_x0;

        // recompute the residuals from the serialized values
        double r = 0.0;
        std::vector<std::vector<double>> xs(N);
        for (int i = 0; i < N; ++i) {
            xs[i] = quantized(rec.xs[i]);
            for (int c = 0; c < d; ++c) {
                double t = xs[i][c] - x0[c];
                r += t * t;
            }
        }
        double s = 0.0;
        for (int c = 0; c < d; ++c) {
            double t = x0[c] - x0_prev[c];
            s += t * t;
        }
        s *= N * trace.rho * trace.rho;

        os << rec.k;
        emit_vector(os, x0);
        os << ',' << format_sig12(r) << ',' << format_sig12(s);
        for (int i = 0; i < N; ++i) {
            emit_vector(os, xs[i]);
            emit_vector(os, quantized(rec.lambdas[i]));
            os << ',' << format_sig12(rec.latest_y[i]);
        }
        os << '\n';
        prev_x0 = x0;
    }
}

void write_trace_csv_file(const RunTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_trace_csv(trace, out);
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

void write_compare_csv(const RunTrace& bo, const RunTrace& model, std::ostream& os) {
    if (bo.iterations.size() != model.iterations.size())
        throw std::invalid_argument("write_compare_csv: traces have different iteration counts");
    if (bo.dim != model.dim)
        throw std::invalid_argument("write_compare_csv: traces have different dimensions");

    const int d = bo.dim;
    os << 'k';
    header_vector(os, "x0_mabo", d);
    os << ",r_mabo,s_mabo";
    header_vector(os, "x0_model", d);
    os << ",r_model,s_model\n";
    for (std::size_t k = 0; k < bo.iterations.size(); ++k) {
        const IterationRecord& a = bo.iterations[k];
        const IterationRecord& b = model.iterations[k];
        os << a.k;
        emit_vector(os, quantized(a.x0));
        os << ',' << format_sig12(a.primal) << ',' << format_sig12(a.dual);
        emit_vector(os, quantized(b.x0));
        os << ',' << format_sig12(b.primal) << ',' << format_sig12(b.dual);
        os << '\n';
    }
}

void write_compare_csv_file(const RunTrace& bo, const RunTrace& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    write_compare_csv(bo, model, out);
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace mabo
