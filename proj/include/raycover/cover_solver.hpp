#pragma once

// Exact decision procedure for Connected Segment Polyline Cover on small
// instances, plus the witness verifier and the Hamiltonian-path extractor.
//
// On an instance in general position (no two segments collinear, no three
// through a point) with k equal to the segment count, every k-link cover
// assigns exactly one segment per link, and the bend between consecutive
// links is forced to the unique crossing of their supporting lines.  The
// search is therefore a search over segment orders with a per-triple
// feasibility predicate, run as a subset DP.  No properties of the needle
// construction are assumed; the solver is a neutral oracle.

#include "raycover/needle_reduce.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace raycover {

struct Polyline {
    explicit Polyline(std::vector<ExactPoint> vs) : vertices(std::move(vs)) {
        if (vertices.size() < 2) throw std::invalid_argument("Polyline: need >= 2 vertices");
        for (std::size_t i = 0; i + 1 < vertices.size(); ++i)
            if (vertices[i] == vertices[i + 1])
                throw std::invalid_argument("Polyline: consecutive vertices equal");
    }

    int link_count() const { return static_cast<int>(vertices.size()) - 1; }
    Segment link(int i) const { return Segment(vertices[i], vertices[i + 1]); }
    std::vector<Segment> links() const {
        std::vector<Segment> out;
        out.reserve(link_count());
        for (int i = 0; i < link_count(); ++i) out.push_back(link(i));
        return out;
    }

    std::vector<ExactPoint> vertices;
};

struct CoverWitness {
    Polyline polyline;
    std::map<std::string, int> assignment;  // segment label -> 1-based link index
};

/// True iff every instance segment is contained in some link and the polyline
/// respects the link budget.
inline bool verify_cover(const CoverInstance& ci, const Polyline& p) {
    if (p.link_count() > ci.k) return false;
    for (const LabeledSegment& ls : ci.segments) {
        bool covered = false;
        for (int i = 0; i < p.link_count() && !covered; ++i)
            covered = segment_contains(p.link(i), ls.seg);
        if (!covered) return false;
    }
    return true;
}

namespace detail {

constexpr int kCoverSegmentCap = 13;  // subset DP guard; covers n <= 5 needle instances

struct CoverSearch {
    explicit CoverSearch(const CoverInstance& ci) : instance(ci) {
        m = static_cast<int>(ci.segments.size());
        cross_point.assign(m * m, std::nullopt);
        cross_param.assign(m * m, std::nullopt);
        for (int i = 0; i < m; ++i) {
            const Segment& si = ci.segment(i);
            const Direction di = delta(si.p, si.q);
            for (int j = 0; j < m; ++j) {
                if (j == i) continue;
                const Segment& sj = ci.segment(j);
                const auto params = line_line_params(si.p, di, sj.p, delta(sj.p, sj.q));
                if (!params) continue;
                cross_param[i * m + j] = params->first;
                cross_point[i * m + j] = line_point(si.p, di, params->first);
            }
        }
        // end_ok[i][j]: the link covering i may terminate freely on one side
        // and bend onto j's line on the other (bend not strictly inside i).
        end_ok.assign(m * m, 0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                const auto& t = cross_param[i * m + j];
                if (t && !(t->sign() > 0 && *t < Rational(1))) end_ok[i * m + j] = 1;
            }
        // feas3[p][l][x]: the link covering l runs between its bends with p
        // and with x and still contains l.
        feas3.assign(m * m * m, 0);
        for (int l = 0; l < m; ++l)
            for (int p = 0; p < m; ++p) {
                if (p == l || !cross_param[l * m + p]) continue;
                for (int x = 0; x < m; ++x) {
                    if (x == l || x == p || !cross_param[l * m + x]) continue;
                    const Rational& t1 = *cross_param[l * m + p];
                    const Rational& t2 = *cross_param[l * m + x];
                    const Rational& lo = t1 < t2 ? t1 : t2;
                    const Rational& hi = t1 < t2 ? t2 : t1;
                    if (lo.sign() <= 0 && hi >= Rational(1)) feas3[(p * m + l) * m + x] = 1;
                }
            }
        memo.assign(static_cast<std::size_t>(m) * m << m, 0);  // 0 unknown, 1 yes, 2 no
        full = (1u << m) - 1;
    }

    bool suffix_feasible(std::uint32_t mask, int p, int l) {
        if (mask == full) return end_ok[l * m + p] != 0;
        char& slot = memo[(static_cast<std::size_t>(mask) * m + p) * m + l];
        if (slot) return slot == 1;
        bool ok = false;
        for (int x = 0; x < m && !ok; ++x) {
            if (mask & (1u << x)) continue;
            if (feas3[(p * m + l) * m + x] && suffix_feasible(mask | (1u << x), l, x)) ok = true;
        }
        slot = ok ? 1 : 2;
        return ok;
    }

    /// Lexicographically smallest feasible segment order, if any.
    std::optional<std::vector<int>> lex_min_order() {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (j == i || !end_ok[i * m + j]) continue;
                if (!suffix_feasible((1u << i) | (1u << j), i, j)) continue;
                std::vector<int> order{i, j};
                std::uint32_t mask = (1u << i) | (1u << j);
                while (mask != full) {
                    bool advanced = false;
                    const int p = order[order.size() - 2];
                    const int l = order.back();
                    for (int x = 0; x < m; ++x) {
                        if (mask & (1u << x)) continue;
                        if (feas3[(p * m + l) * m + x] &&
                            suffix_feasible(mask | (1u << x), l, x)) {
                            order.push_back(x);
                            mask |= 1u << x;
                            advanced = true;
                            break;
                        }
                    }
                    if (!advanced) throw std::logic_error("cover search: memo inconsistent");
                }
                return order;
            }
        }
        return std::nullopt;
    }

    /// Whether a full order is feasible (used by the permutation fallback).
    bool order_feasible(const std::vector<int>& order) const {
        if (!end_ok[order[0] * m + order[1]]) return false;
        if (!end_ok[order[m - 1] * m + order[m - 2]]) return false;
        for (int i = 2; i < m; ++i)
            if (!feas3[(order[i - 2] * m + order[i - 1]) * m + order[i]]) return false;
        return true;
    }

    CoverWitness witness_from_order(const std::vector<int>& order) const {
        std::vector<ExactPoint> vs;
        auto far_endpoint = [&](int seg, int nbr) {
            const Rational& t = *cross_param[seg * m + nbr];
            const Segment& s = instance.segment(seg);
            return t.sign() <= 0 ? s.q : s.p;  // extend just enough past the far end
        };
        vs.push_back(far_endpoint(order[0], order[1]));
        for (std::size_t i = 0; i + 1 < order.size(); ++i)
            vs.push_back(*cross_point[order[i] * m + order[i + 1]]);
        vs.push_back(far_endpoint(order.back(), order[order.size() - 2]));
        CoverWitness w{Polyline(std::move(vs)), {}};
        for (std::size_t i = 0; i < order.size(); ++i)
            w.assignment[instance.segments[order[i]].label] = static_cast<int>(i) + 1;
        return w;
    }

    const CoverInstance& instance;
    int m = 0;
    std::uint32_t full = 0;
    std::vector<std::optional<ExactPoint>> cross_point;
    std::vector<std::optional<Rational>> cross_param;
    std::vector<char> end_ok;
    std::vector<char> feas3;
    std::vector<char> memo;
};

inline void check_solvable(const CoverInstance& ci, int cap) {
    const int m = static_cast<int>(ci.segments.size());
    if (m == 0) throw std::invalid_argument("solve_cover: no segments");
    if (m > cap) throw std::invalid_argument("solve_cover: instance too large for exact search");
    if (ci.k > m)
        throw std::invalid_argument(
            "solve_cover: budget exceeds segment count; exact search unsupported");
    if (auto why = general_position_violation(ci.segments))
        throw std::invalid_argument("solve_cover: " + *why);
}

}  // namespace detail

/// Exhaustive exact solver.  Returns the witness with the lexicographically
/// smallest segment order, or nullopt when no cover with <= k links exists.
inline std::optional<CoverWitness> solve_cover(const CoverInstance& ci) {
    detail::check_solvable(ci, detail::kCoverSegmentCap);
    const int m = static_cast<int>(ci.segments.size());
    if (ci.k < m) return std::nullopt;  // each link fully covers at most one segment
    if (m == 1) {
        CoverWitness w{Polyline({ci.segment(0).p, ci.segment(0).q}), {}};
        w.assignment[ci.segments[0].label] = 1;
        return w;
    }
    detail::CoverSearch search(ci);
    auto order = search.lex_min_order();
    if (!order) return std::nullopt;
    return search.witness_from_order(*order);
}

/// Plain permutation enumeration over segment orders; kept solely to validate
/// the subset-DP solver on tiny instances.
inline std::optional<CoverWitness> solve_cover_naive(const CoverInstance& ci) {
    detail::check_solvable(ci, 9);
    const int m = static_cast<int>(ci.segments.size());
    if (ci.k < m) return std::nullopt;
    if (m == 1) {
        CoverWitness w{Polyline({ci.segment(0).p, ci.segment(0).q}), {}};
        w.assignment[ci.segments[0].label] = 1;
        return w;
    }
    detail::CoverSearch search(ci);
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (search.order_feasible(perm)) return search.witness_from_order(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

/// Reads the chord visit order off a (2n+3)-link witness: after the three
/// leading links the needles are consumed in consecutive pairs.  The result
/// is the chord sequence; callers check it against the circle graph.
inline std::vector<int> extract_hamiltonian_path(const CoverWitness& w, const CoverInstance& ci) {
    if (!ci.has_metadata())
        throw std::invalid_argument("extract_hamiltonian_path: instance has no needle metadata");
    const int m = static_cast<int>(ci.segments.size());
    if (static_cast<int>(w.assignment.size()) != m || w.polyline.link_count() != m)
        throw std::invalid_argument("extract_hamiltonian_path: witness does not assign all links");

    std::vector<int> link_to_seg(m, -1);
    for (const auto& [label, link] : w.assignment) {
        int idx = -1;
        for (int i = 0; i < m; ++i)
            if (ci.segments[i].label == label) idx = i;
        if (idx < 0 || link < 1 || link > m || link_to_seg[link - 1] != -1)
            throw std::invalid_argument("extract_hamiltonian_path: malformed assignment");
        link_to_seg[link - 1] = idx;
    }
    // Accept either traversal direction.
    if (link_to_seg[0] != ci.lead_h) std::reverse(link_to_seg.begin(), link_to_seg.end());
    if (link_to_seg[0] != ci.lead_h || link_to_seg[1] != ci.lead_v || link_to_seg[2] != ci.lead_t)
        throw std::invalid_argument("extract_hamiltonian_path: leading links out of order");

    std::map<int, int> seg_to_chord;
    for (const NeedleInfo& nd : ci.needles) {
        seg_to_chord[nd.left_index] = nd.chord;
        seg_to_chord[nd.right_index] = nd.chord;
    }
    std::vector<int> chords;
    std::set<int> seen;
    for (std::size_t i = 3; i < link_to_seg.size(); i += 2) {
        const auto it1 = seg_to_chord.find(link_to_seg[i]);
        const auto it2 = seg_to_chord.find(link_to_seg[i + 1]);
        if (it1 == seg_to_chord.end() || it2 == seg_to_chord.end() || it1->second != it2->second)
            throw std::invalid_argument("extract_hamiltonian_path: needle links not paired");
        if (!seen.insert(it1->second).second)
            throw std::invalid_argument("extract_hamiltonian_path: needle visited twice");
        chords.push_back(it1->second);
    }
    return chords;
}

}  // namespace raycover
