#include "slicescale/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace slicescale {

namespace {
constexpr double kFlowEps = 1e-12;
}

MaxFlow::MaxFlow(int num_nodes) : graph_(num_nodes) {}

void MaxFlow::add_edge(int from, int to, double capacity) {
    graph_[from].push_back({to, capacity, static_cast<int>(graph_[to].size())});
    graph_[to].push_back({from, 0.0, static_cast<int>(graph_[from].size()) - 1});
}

bool MaxFlow::bfs(int source, int sink) {
    level_.assign(graph_.size(), -1);
    std::queue<int> q;
    level_[source] = 0;
    q.push(source);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const Edge& e : graph_[v])
            if (e.cap > kFlowEps && level_[e.to] < 0) {
                level_[e.to] = level_[v] + 1;
                q.push(e.to);
            }
    }
    return level_[sink] >= 0;
}

double MaxFlow::dfs(int v, int sink, double pushed) {
    if (v == sink) return pushed;
    for (int& i = iter_[v]; i < static_cast<int>(graph_[v].size()); ++i) {
        Edge& e = graph_[v][i];
        if (e.cap <= kFlowEps || level_[e.to] != level_[v] + 1) continue;
        double got = dfs(e.to, sink, std::min(pushed, e.cap));
        if (got > kFlowEps) {
            e.cap -= got;
            graph_[e.to][e.rev].cap += got;
            return got;
        }
    }
    return 0.0;
}

double MaxFlow::run(int source, int sink) {
    double flow = 0.0;
    while (bfs(source, sink)) {
        iter_.assign(graph_.size(), 0);
        for (;;) {
            double got = dfs(source, sink, std::numeric_limits<double>::infinity());
            if (got <= kFlowEps) break;
            flow += got;
        }
    }
    return flow;
}

}  // namespace slicescale
