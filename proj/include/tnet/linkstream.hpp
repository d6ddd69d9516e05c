#ifndef TNET_LINKSTREAM_HPP
#define TNET_LINKSTREAM_HPP

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "tnet/common.hpp"

namespace tnet {

/// One interval-stamped undirected link: {u,v} active on [alpha, omega).
struct Event {
    double alpha = 0.0;
    double omega = 0.0;
    int u = 0;
    int v = 0;

    bool operator==(const Event&) const = default;
};

/// Continuous-time temporal network over nodes 0..N-1 and time domain
/// [0, t_max). Activity intervals are half-open; per-pair overlapping or
/// touching intervals are merged at construction, and events are kept sorted
/// by (alpha, omega, u, v).
class LinkStream {
public:
    LinkStream(int node_count, double t_max, std::vector<Event> raw_events);

    int node_count() const { return node_count_; }
    double t_max() const { return t_max_; }
    const std::vector<Event>& events() const { return events_; }

private:
    int node_count_;
    double t_max_;
    std::vector<Event> events_;
};

/// Static undirected graph, optionally with per-edge weights (contact
/// durations in seconds). Edges are sorted pairs (u < v); `weights`, when
/// non-empty, is parallel to `edges`.
struct StaticGraph {
    int node_count = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<double> weights;

    bool has_edge(int u, int v) const;
};

/// Non-overlapping binary snapshots of fixed width. Matrices are N x N,
/// symmetric, zero diagonal, entries in {0, 1}.
struct SnapshotSequence {
    double width_w = 0.0;
    std::vector<Eigen::MatrixXd> snapshots;

    int node_count() const {
        return snapshots.empty() ? 0 : static_cast<int>(snapshots.front().rows());
    }
    int size() const { return static_cast<int>(snapshots.size()); }
};

/// Sorted distinct event endpoints, always including 0 and t_max. The
/// instantaneous graph is constant on each [times[k], times[k+1]).
struct TemporalGrid {
    std::vector<double> times;
};

LinkStream new_link_stream(int node_count, double t_max, std::vector<Event> raw_events);

TemporalGrid temporal_grid(const LinkStream& stream);

/// Graph of links active at time t (alpha <= t < omega). Requires 0 <= t < t_max.
StaticGraph instantaneous_graph(const LinkStream& stream, double t);

/// Footprint over the closed window [a, b]: edge present iff active at some
/// t in [a, b]. The weighted variant carries the Lebesgue measure of activity
/// within the window; edges active only on a zero-measure set keep weight 0.
StaticGraph footprint(const LinkStream& stream, double a, double b, bool weighted = false);

/// Time reversal: each event (alpha, omega) maps to (t_max - omega, t_max - alpha).
LinkStream reverse(const LinkStream& stream);

/// Binary snapshots of width w over [s*w, (s+1)*w) intersected with the time
/// domain; ceil(t_max / w) snapshots in total.
SnapshotSequence aggregate_snapshots(const LinkStream& stream, double width_w);

/// Continuous times to snapshot indices by floor division; ascending, deduplicated.
std::vector<int> project_changepoints(const std::vector<double>& times, double width_w);

/// Piecewise-constant link stream equivalent to the snapshot sequence
/// (snapshot s active on [s*w, (s+1)*w)).
LinkStream stream_from_snapshots(const SnapshotSequence& snaps, double t_max = -1.0);

/// Connected-component label per node (labels are 0-based, ordered by
/// smallest member node).
std::vector<int> connected_components(const StaticGraph& graph);
int component_count(const StaticGraph& graph);

// --- file I/O ------------------------------------------------------------

/// Contact records `t,i,j` (whitespace- or comma-separated, arbitrary string
/// ids). Each record becomes an event (t, t + contact_duration); ids are
/// compacted to 0..N-1 by sorted original label (numeric order when every id
/// parses as an integer).
LinkStream load_contacts(const std::string& path, double contact_duration);

/// Link-stream CSV: optional first line `# nodes=<N> t_max=<T>`, then a
/// header `alpha,omega,u,v` and one event per row. Without the comment line,
/// node count and t_max are inferred from the events.
LinkStream load_stream_csv(const std::string& path);
void save_stream_csv(const LinkStream& stream, const std::string& path);

/// Dense CSV block per snapshot, blank-line-separated, with a leading
/// `# w=<width>` comment.
void save_snapshots_csv(const SnapshotSequence& snaps, const std::string& path);
SnapshotSequence load_snapshots_csv(const std::string& path);

} // namespace tnet

#endif
