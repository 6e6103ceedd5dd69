#pragma once

#include <string>
#include <vector>

#include "graphmean/graph.hpp"

namespace graphmean {

// Ordered list of graphs with optional class labels; the unit all mean
// algorithms and Frechet evaluations operate on.
struct Sample {
    std::vector<AttributedGraph> graphs;
    std::vector<std::string> labels; // empty, or one label per graph

    int size() const noexcept { return static_cast<int>(graphs.size()); }

    int attr_dim() const {
        require_valid();
        return graphs.front().attr_dim();
    }

    int max_order() const {
        require_valid();
        int n = 0;
        for (const AttributedGraph& g : graphs) n = std::max(n, g.order());
        return n;
    }

    // nonempty, uniform attribute dimension, labels absent or full
    void require_valid() const {
        if (graphs.empty()) throw std::invalid_argument("Sample: empty sample");
        const int d = graphs.front().attr_dim();
        for (const AttributedGraph& g : graphs)
            if (g.attr_dim() != d)
                throw std::invalid_argument("Sample: graphs have mixed attribute dimensions");
        if (!labels.empty() && labels.size() != graphs.size())
            throw std::invalid_argument("Sample: label count does not match graph count");
    }
};

} // namespace graphmean
