#pragma once

#include <vector>

namespace slicescale {

/// Dinic max flow on a small directed graph with real capacities.
class MaxFlow {
public:
    explicit MaxFlow(int num_nodes);

    void add_edge(int from, int to, double capacity);
    double run(int source, int sink);

private:
    struct Edge {
        int to;
        double cap;
        int rev;
    };
    bool bfs(int source, int sink);
    double dfs(int v, int sink, double pushed);

    std::vector<std::vector<Edge>> graph_;
    std::vector<int> level_, iter_;
};

}  // namespace slicescale
