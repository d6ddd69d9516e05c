#include "tnet/entropy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace tnet {

namespace {

constexpr double kRowTolerance = 1e-10;
constexpr double kSpectrumTolerance = 1e-9;

void validate_row(const Eigen::VectorXd& row) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < row.size(); ++j) {
        if (row[j] < -kRowTolerance)
            throw NumericalError("probability row has negative entry " + std::to_string(row[j]));
        sum += row[j];
    }
    if (std::abs(sum - 1.0) > kRowTolerance)
        throw NumericalError("probability row sums to " + std::to_string(sum));
}

double entropy_of(const Eigen::VectorXd& p) {
    double h = 0.0;
    for (Eigen::Index j = 0; j < p.size(); ++j)
        if (p[j] > 0.0) h -= p[j] * std::log(p[j]);
    return h;
}

std::string fmt_double(double x) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, p);
}

} // namespace

Distribution::Distribution(Eigen::VectorXd p) : probs(std::move(p)) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
        if (probs[i] < 0.0)
            throw DataError("distribution entries must be nonnegative");
        sum += probs[i];
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw DataError("distribution must sum to 1 (got " + std::to_string(sum) + ")");
}

Distribution Distribution::uniform(int n) {
    if (n < 1) throw DataError("distribution needs at least one node");
    return Distribution(Eigen::VectorXd::Constant(n, 1.0 / n));
}

double row_entropy(const Eigen::VectorXd& row) {
    validate_row(row);
    return entropy_of(row.cwiseMax(0.0));
}

double kl_to_uniform(const Eigen::VectorXd& row) {
    validate_row(row);
    const double n = static_cast<double>(row.size());
    double kl = 0.0;
    for (Eigen::Index j = 0; j < row.size(); ++j)
        if (row[j] > 0.0) kl += row[j] * std::log(n * row[j]);
    return kl;
}

double conditional_entropy(const Eigen::MatrixXd& kernel, const Distribution& p0) {
    if (kernel.rows() != p0.probs.size())
        throw DataError("kernel and initial distribution sizes differ");
    double h = 0.0;
    for (Eigen::Index i = 0; i < kernel.rows(); ++i)
        h += p0.probs[i] * row_entropy(kernel.row(i));
    return h;
}

double global_entropy(const LinkStream& stream, double lambda, double t,
                      const Distribution& p0, Direction direction) {
    if (t < 0.0 || t > stream.t_max())
        throw DataError("time outside [0, t_max]");
    if (direction == Direction::Forward)
        return conditional_entropy(kernel(stream, lambda, 0.0, t).matrix, p0);
    // Diffusion from t_max backward to t = forward diffusion on the reversed
    // stream from 0 to t_max - t.
    LinkStream rev = reverse(stream);
    return conditional_entropy(kernel(rev, lambda, 0.0, stream.t_max() - t).matrix, p0);
}

EntropySignal global_entropy_curve(const LinkStream& stream, double lambda,
                                   const std::vector<double>& eval_times,
                                   const Distribution& p0, Direction direction) {
    if (!std::is_sorted(eval_times.begin(), eval_times.end()))
        throw DataError("evaluation times must be increasing");
    EntropySignal sig;
    sig.times = eval_times;
    sig.rate_lambda = lambda;
    sig.window_delta = 0.0;
    sig.direction = direction;
    sig.values.reserve(eval_times.size());

    if (direction == Direction::Forward) {
        DiffusionEngine engine(stream);
        Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(stream.node_count(), stream.node_count());
        double prev = 0.0;
        for (double t : eval_times) {
            if (t < 0.0 || t > stream.t_max())
                throw DataError("evaluation time outside [0, t_max]");
            acc = acc * engine.kernel(lambda, prev, t).matrix;
            prev = t;
            sig.values.push_back(conditional_entropy(acc, p0));
        }
        return sig;
    }

    // Backward: accumulate on the reversed stream over decreasing original
    // times, then flip back into ascending order.
    DiffusionEngine engine(reverse(stream));
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(stream.node_count(), stream.node_count());
    double prev = 0.0;
    std::vector<double> rev_values;
    rev_values.reserve(eval_times.size());
    for (auto it = eval_times.rbegin(); it != eval_times.rend(); ++it) {
        double s = stream.t_max() - *it;
        if (s < 0.0 || s > stream.t_max())
            throw DataError("evaluation time outside [0, t_max]");
        acc = acc * engine.kernel(lambda, prev, s).matrix;
        prev = s;
        rev_values.push_back(conditional_entropy(acc, p0));
    }
    sig.values.assign(rev_values.rbegin(), rev_values.rend());
    return sig;
}

double local_entropy(const DiffusionEngine& engine, double lambda, double t, double delta) {
    if (delta < 0.0)
        throw DataError("window length must be nonnegative");
    const double half = delta / 2.0;
    if (t < half || t > engine.stream().t_max() - half)
        throw DataError("window center too close to the domain boundary");
    TransitionKernel k = engine.kernel(lambda, t - half, t + half);
    return conditional_entropy(k.matrix, Distribution::uniform(engine.stream().node_count()));
}

double local_entropy(const LinkStream& stream, double lambda, double t, double delta,
                     Direction direction) {
    if (direction == Direction::Forward)
        return local_entropy(DiffusionEngine(stream), lambda, t, delta);
    // Window centered at t in original time, diffused on the reversed stream.
    return local_entropy(DiffusionEngine(reverse(stream)), lambda, stream.t_max() - t, delta);
}

EntropySignal local_entropy_signal_at(const DiffusionEngine& engine, double lambda,
                                      double delta, const std::vector<double>& times) {
    EntropySignal sig;
    sig.rate_lambda = lambda;
    sig.window_delta = delta;
    sig.direction = Direction::Forward;
    sig.times = times;
    sig.values.reserve(times.size());
    for (double t : times) sig.values.push_back(local_entropy(engine, lambda, t, delta));
    return sig;
}

EntropySignal local_entropy_signal(const LinkStream& stream, double lambda, double delta,
                                   SignalGrid mode, double step, Direction direction) {
    if (!(delta < stream.t_max()))
        throw DataError("window length must be smaller than the time domain");
    const double half = delta / 2.0;
    const double lo = half, hi = stream.t_max() - half;

    std::vector<double> times;
    if (mode == SignalGrid::Event) {
        for (double t : temporal_grid(stream).times)
            if (t >= lo && t <= hi) times.push_back(t);
    } else {
        if (!(step > 0.0))
            throw DataError("uniform signal grid requires a positive step");
        for (double t = lo; t <= hi + 1e-12 * stream.t_max(); t += step)
            times.push_back(std::min(t, hi));
        if (!times.empty() && times.size() >= 2 && times[times.size() - 1] == times[times.size() - 2])
            times.pop_back();
    }

    bool forward = direction == Direction::Forward;
    DiffusionEngine engine(forward ? stream : reverse(stream));
    EntropySignal sig;
    sig.rate_lambda = lambda;
    sig.window_delta = delta;
    sig.direction = direction;
    sig.times = times;
    sig.values.reserve(times.size());
    for (double t : times)
        sig.values.push_back(local_entropy(engine, lambda, forward ? t : stream.t_max() - t, delta));
    return sig;
}

double upper_bound(const LinkStream& stream, double a, double b) {
    StaticGraph fp = footprint(stream, a, b, /*weighted=*/false);
    auto labels = connected_components(fp);
    std::vector<int> sizes(labels.empty() ? 0 : 1 + *std::max_element(labels.begin(), labels.end()), 0);
    for (int l : labels) ++sizes[l];
    const double n = static_cast<double>(stream.node_count());
    double bound = 0.0;
    for (int s : sizes) bound += (s / n) * std::log(static_cast<double>(s));
    return bound;
}

double von_neumann_entropy(const Laplacian& lap, double tau) {
    if (!(tau > 0.0))
        throw DataError("von Neumann entropy requires tau > 0");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap.matrix, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("eigendecomposition failed");
    Eigen::VectorXd p = (-tau * es.eigenvalues().array()).exp();
    p /= p.sum();
    return entropy_of(p);
}

SpectrumReport spectral_check(const Eigen::MatrixXd& kernel_matrix) {
    if (kernel_matrix.rows() != kernel_matrix.cols())
        throw DataError("spectral check requires a square matrix");
    Eigen::EigenSolver<Eigen::MatrixXd> es(kernel_matrix, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw NumericalError("eigendecomposition failed");
    SpectrumReport report;
    report.eigenvalues.reserve(kernel_matrix.rows());
    bool ok = true;
    for (Eigen::Index i = 0; i < kernel_matrix.rows(); ++i) {
        std::complex<double> ev = es.eigenvalues()[i];
        report.eigenvalues.push_back(ev);
        if (std::abs(ev.imag()) > kSpectrumTolerance || ev.real() < -kSpectrumTolerance)
            ok = false;
    }
    report.is_real_nonnegative = ok;
    if (ok) {
        Eigen::VectorXd p(kernel_matrix.rows());
        for (Eigen::Index i = 0; i < kernel_matrix.rows(); ++i)
            p[i] = std::max(0.0, report.eigenvalues[i].real());
        double z = p.sum();
        if (z <= 0.0)
            throw NumericalError("kernel spectrum has zero trace");
        p /= z;
        report.vn_entropy = entropy_of(p);
    }
    return report;
}

void save_signal_csv(const EntropySignal& signal, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write signal file: " + path);
    out << "# lambda=" << fmt_double(signal.rate_lambda)
        << ", delta=" << fmt_double(signal.window_delta)
        << ", direction=" << to_string(signal.direction) << "\n";
    out << "t,value\n";
    for (std::size_t i = 0; i < signal.times.size(); ++i)
        out << fmt_double(signal.times[i]) << ',' << fmt_double(signal.values[i]) << "\n";
}

EntropySignal load_signal_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open signal file: " + path);
    EntropySignal sig;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string tok;
            while (std::getline(meta, tok, ',')) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                std::string key = tok.substr(0, eq);
                key.erase(0, key.find_first_not_of(' '));
                std::string val = tok.substr(eq + 1);
                if (key == "lambda") sig.rate_lambda = std::stod(val);
                else if (key == "delta") sig.window_delta = std::stod(val);
                else if (key == "direction")
                    sig.direction = (val == "backward") ? Direction::Backward : Direction::Forward;
            }
            continue;
        }
        if (line.rfind("t,", 0) == 0) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw DataError("malformed signal row in " + path);
        sig.times.push_back(std::stod(line.substr(0, comma)));
        sig.values.push_back(std::stod(line.substr(comma + 1)));
    }
    return sig;
}

} // namespace tnet
