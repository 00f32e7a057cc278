#pragma once

#include "leech/hole.hpp"

// D24 deep-hole fixture: the 25 published vertex rows and the center.
inline leech::HoleRecord d24_record() {
    leech::HoleRecord r;
    r.id = "c1";
    r.claimed_type = "D24";
    static const int v[25][24] = {
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0},
        {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1},
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
        {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1},
        {2, -1, -1, -1, 0, 0, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0},
        {0, 0, 0, 0, 0, -1, -1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 1, -1, 0, 0, -1, 1, 0, 0},
        {-2, 1, 1, 1, 1, 1, 1, -2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1},
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0},
        {2, 0, -1, -1, 0, 0, -1, 1, 0, 0, -1, 1, 0, -1, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0},
        {2, -1, 0, 0, -1, 0, 0, 0, -1, 0, 0, 0, -1, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0},
        {1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1},
        {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
        {-1, 0, 0, 1, 1, 1, 1, -1, 0, -1, 0, 1, 0, 0, -1, 0, 0, 1, -1, 0, 0, 0, 1, 0},
        {-3, 1, 1, 0, 1, 0, 0, 1, 1, 1, 0, 0, 1, -1, 0, 0, 1, -1, 0, 0, -1, 1, 0, 0},
        {1, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1},
        {-1, 0, 0, 0, 1, 0, 0, 1, 1, 1, 0, 0, 0, -1, 0, 0, 0, -1, 0, 0, 0, 1, 0, 0},
        {3, -1, 0, -1, -1, -1, 0, 0, -1, -1, -1, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0},
        {-2, 0, 0, 1, 1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, -2, 0, 0, 0, 0, 1},
        {5, -1, -2, -2, -1, -1, 0, 0, 0, 0, -1, 1, 0, 0, 0, -1, 0, 0, 1, -1, 2, -1, -1, 2},
        {-5, 2, 3, 2, 0, 1, 0, 0, -1, 1, 1, -2, -1, 0, 0, 2, -1, 0, 0, 2, -2, 2, 2, -3},
        {1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, -1, 1},
        {1, 0, -1, -1, 1, 0, 1, 0, 0, -1, -1, 2, 0, 0, 0, 0, 1, 0, 0, -2, 0, 0, 0, 1},
        {4, -2, -2, -1, 0, -1, -1, 2, 0, -1, -1, 2, 1, 0, 0, -2, 0, 0, 0, 0, 0, 0, 0, 1},
    };
    for (int i = 0; i < 25; ++i) {
        leech::LatticeVector lv;
        for (int j = 0; j < 24; ++j) lv.c[j] = v[i][j];
        r.vertices.push_back(lv);
    }
    return r;
}

inline leech::QPoint d24_center() {
    static const int num46[24] = {15, -2, -1, -2, 5, -1, -2, 4, 0, 0, -6, 12, -1, 0, 0, 0, 5, -4, -2, 0, 3, 12, 2, 14};
    leech::QPoint p;
    for (int i = 0; i < 24; ++i) p.c[i] = leech::make_rat(num46[i], 46);
    return p;
}
