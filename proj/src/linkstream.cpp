#include "tnet/linkstream.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tnet {

namespace {

std::string fmt_double(double x) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    (void)ec;
    return std::string(buf, p);
}

} // namespace

LinkStream::LinkStream(int node_count, double t_max, std::vector<Event> raw_events)
    : node_count_(node_count), t_max_(t_max) {
    if (node_count < 1)
        throw DataError("link stream requires at least one node");
    if (!(t_max > 0.0))
        throw DataError("link stream requires t_max > 0");

    for (auto& e : raw_events) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.u == e.v)
            throw DataError("self-loop event on node " + std::to_string(e.u));
        if (e.u < 0 || e.v >= node_count)
            throw DataError("event node id out of range: {" + std::to_string(e.u) +
                            "," + std::to_string(e.v) + "}");
        if (!(e.alpha < e.omega))
            throw DataError("event requires alpha < omega (got alpha=" +
                            fmt_double(e.alpha) + ", omega=" + fmt_double(e.omega) + ")");
        if (e.alpha < 0.0)
            throw DataError("event starts before time 0");
        if (e.omega > t_max)
            throw DataError("event ends after t_max");
    }

    // Merge overlapping or touching intervals per unordered pair.
    std::sort(raw_events.begin(), raw_events.end(), [](const Event& a, const Event& b) {
        return std::tie(a.u, a.v, a.alpha, a.omega) < std::tie(b.u, b.v, b.alpha, b.omega);
    });
    for (const auto& e : raw_events) {
        if (!events_.empty()) {
            Event& last = events_.back();
            if (last.u == e.u && last.v == e.v && e.alpha <= last.omega) {
                last.omega = std::max(last.omega, e.omega);
                continue;
            }
        }
        events_.push_back(e);
    }
    std::sort(events_.begin(), events_.end(), [](const Event& a, const Event& b) {
        return std::tie(a.alpha, a.omega, a.u, a.v) < std::tie(b.alpha, b.omega, b.u, b.v);
    });
}

LinkStream new_link_stream(int node_count, double t_max, std::vector<Event> raw_events) {
    return LinkStream(node_count, t_max, std::move(raw_events));
}

bool StaticGraph::has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

TemporalGrid temporal_grid(const LinkStream& stream) {
    std::set<double> ts{0.0, stream.t_max()};
    for (const auto& e : stream.events()) {
        ts.insert(e.alpha);
        ts.insert(e.omega);
    }
    return TemporalGrid{std::vector<double>(ts.begin(), ts.end())};
}

StaticGraph instantaneous_graph(const LinkStream& stream, double t) {
    if (t < 0.0 || t >= stream.t_max())
        throw DataError("time outside [0, t_max)");
    StaticGraph g;
    g.node_count = stream.node_count();
    std::set<std::pair<int, int>> edges;
    for (const auto& e : stream.events())
        if (e.alpha <= t && t < e.omega)
            edges.insert({e.u, e.v});
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

StaticGraph footprint(const LinkStream& stream, double a, double b, bool weighted) {
    if (a > b)
        throw DataError("footprint window requires a <= b");
    if (a < 0.0 || b > stream.t_max())
        throw DataError("footprint window outside time domain");
    // Edge set is existential on the closed window; weights are the Lebesgue
    // measure of activity, so point intersections contribute weight 0.
    std::map<std::pair<int, int>, double> acc;
    for (const auto& e : stream.events()) {
        // Active at some t in [a,b] iff alpha <= b and a < omega.
        if (e.alpha <= b && a < e.omega)
            acc[{e.u, e.v}] += std::max(0.0, std::min(e.omega, b) - std::max(e.alpha, a));
    }
    StaticGraph g;
    g.node_count = stream.node_count();
    g.edges.reserve(acc.size());
    for (const auto& [edge, w] : acc) {
        g.edges.push_back(edge);
        if (weighted) g.weights.push_back(w);
    }
    return g;
}

LinkStream reverse(const LinkStream& stream) {
    std::vector<Event> rev;
    rev.reserve(stream.events().size());
    const double t_max = stream.t_max();
    for (const auto& e : stream.events())
        rev.push_back({t_max - e.omega, t_max - e.alpha, e.u, e.v});
    return LinkStream(stream.node_count(), t_max, std::move(rev));
}

SnapshotSequence aggregate_snapshots(const LinkStream& stream, double width_w) {
    if (!(width_w > 0.0))
        throw DataError("snapshot width must be positive");
    const int n = stream.node_count();
    const int count = static_cast<int>(std::ceil(stream.t_max() / width_w));
    SnapshotSequence seq;
    seq.width_w = width_w;
    seq.snapshots.assign(count, Eigen::MatrixXd::Zero(n, n));
    for (const auto& e : stream.events()) {
        // Windows are half-open [s*w, (s+1)*w), like the activity intervals.
        int first = static_cast<int>(std::floor(e.alpha / width_w));
        int last = static_cast<int>(std::floor(e.omega / width_w));
        if (e.omega == last * width_w) --last; // omega excluded
        last = std::min(last, count - 1);
        for (int s = std::max(first, 0); s <= last; ++s) {
            seq.snapshots[s](e.u, e.v) = 1.0;
            seq.snapshots[s](e.v, e.u) = 1.0;
        }
    }
    return seq;
}

std::vector<int> project_changepoints(const std::vector<double>& times, double width_w) {
    if (!(width_w > 0.0))
        throw DataError("snapshot width must be positive");
    std::vector<int> out;
    for (double t : times) {
        int idx = static_cast<int>(std::floor(t / width_w));
        if (out.empty() || out.back() != idx) out.push_back(idx);
    }
    return out;
}

LinkStream stream_from_snapshots(const SnapshotSequence& snaps, double t_max) {
    if (snaps.snapshots.empty())
        throw DataError("empty snapshot sequence");
    const int n = snaps.node_count();
    const double w = snaps.width_w;
    if (t_max <= 0.0) t_max = w * snaps.size();
    std::vector<Event> events;
    for (int s = 0; s < snaps.size(); ++s) {
        const auto& A = snaps.snapshots[s];
        const double a = s * w;
        const double b = std::min((s + 1) * w, t_max);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (A(u, v) != 0.0) events.push_back({a, b, u, v});
    }
    return LinkStream(n, t_max, std::move(events));
}

std::vector<int> connected_components(const StaticGraph& graph) {
    std::vector<int> parent(graph.node_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& [u, v] : graph.edges) {
        int ru = find(u), rv = find(v);
        if (ru != rv) parent[std::max(ru, rv)] = std::min(ru, rv);
    }
    std::vector<int> label(graph.node_count, -1);
    int next = 0;
    for (int i = 0; i < graph.node_count; ++i) {
        int r = find(i);
        if (label[r] < 0) label[r] = next++;
        label[i] = label[r];
    }
    return label;
}

int component_count(const StaticGraph& graph) {
    auto labels = connected_components(graph);
    return labels.empty() ? 0 : 1 + *std::max_element(labels.begin(), labels.end());
}

// --- file I/O ------------------------------------------------------------

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',' || c == ' ' || c == '\t' || c == '\r') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

double parse_double(const std::string& s, const std::string& context) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DataError("malformed number '" + s + "' " + context);
    }
}

} // namespace

LinkStream load_contacts(const std::string& path, double contact_duration) {
    if (!(contact_duration > 0.0))
        throw DataError("contact duration must be positive");
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open contact file: " + path);

    struct Record { double t; std::string i, j; };
    std::vector<Record> records;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto fields = split_fields(line);
        if (fields.empty() || fields[0][0] == '#') continue;
        if (fields.size() != 3)
            throw DataError("malformed contact record at line " + std::to_string(lineno) +
                            ": expected 3 fields, got " + std::to_string(fields.size()));
        double t = parse_double(fields[0], "at line " + std::to_string(lineno));
        if (t < 0.0)
            throw DataError("negative timestamp at line " + std::to_string(lineno));
        records.push_back({t, fields[1], fields[2]});
    }
    if (records.empty())
        throw DataError("no records in contact file: " + path);

    // Stable id map: sorted original labels (numeric order when possible).
    std::set<std::string> labels;
    for (const auto& r : records) {
        labels.insert(r.i);
        labels.insert(r.j);
    }
    std::vector<std::string> sorted_labels(labels.begin(), labels.end());
    bool all_numeric = std::all_of(sorted_labels.begin(), sorted_labels.end(), [](const std::string& s) {
        long long v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        return ec == std::errc() && p == s.data() + s.size();
    });
    if (all_numeric) {
        std::sort(sorted_labels.begin(), sorted_labels.end(), [](const std::string& a, const std::string& b) {
            return std::stoll(a) < std::stoll(b);
        });
    }
    std::map<std::string, int> id;
    for (std::size_t k = 0; k < sorted_labels.size(); ++k) id[sorted_labels[k]] = static_cast<int>(k);

    double t_max = 0.0;
    std::vector<Event> events;
    events.reserve(records.size());
    for (const auto& r : records) {
        events.push_back({r.t, r.t + contact_duration, id[r.i], id[r.j]});
        t_max = std::max(t_max, r.t + contact_duration);
    }
    return LinkStream(static_cast<int>(sorted_labels.size()), t_max, std::move(events));
}

LinkStream load_stream_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open stream file: " + path);
    std::string line;
    int lineno = 0;
    int nodes = -1;
    double t_max = -1.0;
    std::vector<Event> events;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream meta(line.substr(1));
            std::string tok;
            while (meta >> tok) {
                if (tok.rfind("nodes=", 0) == 0) nodes = std::stoi(tok.substr(6));
                if (tok.rfind("t_max=", 0) == 0) t_max = std::stod(tok.substr(6));
            }
            continue;
        }
        auto fields = split_fields(line);
        if (!fields.empty() && fields[0] == "alpha") continue; // header
        if (fields.size() != 4)
            throw DataError("malformed stream row at line " + std::to_string(lineno));
        std::string ctx = "at line " + std::to_string(lineno);
        events.push_back({parse_double(fields[0], ctx), parse_double(fields[1], ctx),
                          static_cast<int>(parse_double(fields[2], ctx)),
                          static_cast<int>(parse_double(fields[3], ctx))});
    }
    if (nodes < 0) {
        for (const auto& e : events) nodes = std::max({nodes, e.u + 1, e.v + 1});
        if (nodes < 1) throw DataError("empty stream file without a # nodes= header: " + path);
    }
    if (t_max < 0.0) {
        for (const auto& e : events) t_max = std::max(t_max, e.omega);
        if (t_max <= 0.0) throw DataError("empty stream file without a # t_max= header: " + path);
    }
    return LinkStream(nodes, t_max, std::move(events));
}

void save_stream_csv(const LinkStream& stream, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write stream file: " + path);
    out << "# nodes=" << stream.node_count() << " t_max=" << fmt_double(stream.t_max()) << "\n";
    out << "alpha,omega,u,v\n";
    for (const auto& e : stream.events())
        out << fmt_double(e.alpha) << ',' << fmt_double(e.omega) << ',' << e.u << ',' << e.v << "\n";
}

void save_snapshots_csv(const SnapshotSequence& snaps, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write snapshot file: " + path);
    out << "# w=" << fmt_double(snaps.width_w) << "\n";
    for (int s = 0; s < snaps.size(); ++s) {
        if (s > 0) out << "\n";
        const auto& A = snaps.snapshots[s];
        for (Eigen::Index i = 0; i < A.rows(); ++i) {
            for (Eigen::Index j = 0; j < A.cols(); ++j) {
                if (j > 0) out << ',';
                out << static_cast<int>(A(i, j));
            }
            out << "\n";
        }
    }
}

SnapshotSequence load_snapshots_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open snapshot file: " + path);
    SnapshotSequence seq;
    std::string line;
    std::vector<std::vector<double>> rows;
    auto flush = [&]() {
        if (rows.empty()) return;
        const int n = static_cast<int>(rows.size());
        Eigen::MatrixXd A(n, n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n)
                throw DataError("non-square snapshot block in " + path);
            for (int j = 0; j < n; ++j) A(i, j) = rows[i][j];
        }
        seq.snapshots.push_back(std::move(A));
        rows.clear();
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') {
            auto pos = line.find("w=");
            if (pos != std::string::npos) seq.width_w = std::stod(line.substr(pos + 2));
            continue;
        }
        auto fields = split_fields(line);
        if (fields.empty()) {
            flush();
            continue;
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(parse_double(f, "in " + path));
        rows.push_back(std::move(row));
    }
    flush();
    if (seq.width_w <= 0.0)
        throw DataError("snapshot file missing # w= header: " + path);
    if (seq.snapshots.empty())
        throw DataError("snapshot file has no blocks: " + path);
    return seq;
}

} // namespace tnet
