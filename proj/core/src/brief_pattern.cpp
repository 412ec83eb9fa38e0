#include "sslam/brief_pattern.hpp"

namespace sslam {

// 256 comparison pairs {dr_a, dc_a, dr_b, dc_b} inside a 31x31 patch,
// drawn once from an isotropic Gaussian (sigma = 31/5) with a fixed
// splitmix64 seed (0x42d69f60193ab321) and frozen here as literals.
const std::array<BriefPair, 256> kBriefPattern = {{
    {-5,-11,14,-10}, {-3,1,2,-13}, {-3,-7,-1,-2}, {-1,-1,1,-6}, {13,-5,2,-1}, {-11,-2,-1,0},
    {-7,-2,4,-4}, {-5,1,7,-2}, {-5,-2,-5,4}, {8,-1,5,7}, {7,11,-5,0}, {4,3,-2,0},
    {-1,-1,-3,-1}, {-5,11,-10,-1}, {5,-1,2,4}, {-13,2,-1,-5}, {14,-3,-6,-1}, {9,-1,7,-4},
    {12,8,-1,-2}, {-13,6,0,8}, {-5,1,-2,-2}, {6,2,2,5}, {4,-3,3,-1}, {4,7,-12,-5},
    {5,-3,-2,0}, {-6,10,6,-5}, {-8,4,-1,6}, {4,6,9,-5}, {-6,12,-15,-6}, {-2,-4,-14,-7},
    {0,-2,-5,-7}, {7,-4,-3,1}, {2,-8,1,3}, {0,-2,1,1}, {0,-7,15,-9}, {-4,1,14,-4},
    {-12,9,8,0}, {-10,2,12,-2}, {-5,2,3,-3}, {-6,14,8,-2}, {4,10,5,6}, {0,-3,-1,8},
    {1,1,4,-1}, {6,0,-1,9}, {-3,0,3,7}, {-3,-1,-5,4}, {-6,-8,-5,-7}, {9,4,7,2},
    {-1,5,7,-4}, {1,6,-8,8}, {8,-7,-8,4}, {6,1,9,3}, {-3,2,7,-3}, {-14,4,5,-1},
    {2,-3,-2,-5}, {-6,11,-2,3}, {-12,-5,-7,5}, {-4,4,-3,-2}, {-9,-3,-9,8}, {-3,6,-7,4},
    {5,7,2,-1}, {12,-11,0,0}, {3,-4,5,4}, {4,5,-2,0}, {-5,4,4,-3}, {-6,-1,-5,6},
    {3,-5,2,4}, {4,-2,-7,-3}, {0,4,9,-1}, {8,-8,-2,-6}, {-5,-4,0,5}, {6,-2,-5,-6},
    {-9,-9,-12,-6}, {-10,1,-12,-1}, {-4,-3,12,1}, {6,-1,-9,-9}, {-1,-2,-13,-10}, {0,-8,-5,3},
    {-3,8,2,0}, {-1,-5,-2,1}, {0,15,-12,-1}, {-9,0,-8,-8}, {1,-2,-2,-12}, {1,-5,11,6},
    {14,3,2,-1}, {-2,2,0,4}, {9,2,-8,0}, {4,-4,6,3}, {-2,1,1,-1}, {10,-2,2,7},
    {-4,-1,-5,13}, {4,-11,0,0}, {1,-5,0,-2}, {-2,-2,0,1}, {-4,6,1,-6}, {4,-9,-3,-9},
    {7,0,-4,-7}, {-7,0,-3,-5}, {-11,-11,0,13}, {-12,-13,-2,14}, {-2,0,-11,1}, {-3,0,3,-3},
    {11,8,-4,-6}, {0,-6,5,-2}, {15,-7,0,12}, {-4,-10,7,2}, {-8,6,-13,10}, {-4,-6,8,0},
    {2,4,3,-6}, {8,8,-3,3}, {1,-2,-4,-1}, {-4,-1,5,-7}, {-2,4,9,-3}, {2,6,0,-1},
    {12,10,-1,7}, {7,-2,-7,7}, {6,0,3,6}, {-2,0,7,-3}, {2,6,3,-6}, {0,9,2,-4},
    {5,7,-7,2}, {5,-10,4,-3}, {-6,-3,-4,2}, {-2,-1,5,-7}, {-9,2,15,-4}, {-2,-11,-3,-4},
    {5,-3,-6,8}, {-7,-1,0,-3}, {-13,4,11,0}, {-5,-2,5,6}, {5,8,-9,3}, {9,3,7,-3},
    {8,10,3,0}, {-6,8,-4,4}, {2,5,-3,-3}, {-8,-5,-9,6}, {-7,10,-1,6}, {0,-15,-7,-1},
    {-2,-4,0,6}, {8,4,3,-6}, {2,-2,-7,-6}, {2,8,-2,2}, {1,-2,-5,3}, {-2,-1,0,6},
    {-7,-9,3,-14}, {-9,7,-6,-2}, {10,-7,-9,2}, {2,8,-2,-8}, {-6,4,-3,4}, {8,9,-8,3},
    {-8,-4,5,6}, {2,-1,8,5}, {5,15,-3,-1}, {3,7,9,-6}, {7,-1,3,-9}, {4,-5,-7,-4},
    {6,-6,2,3}, {0,-5,-4,-1}, {4,5,-7,6}, {-8,0,6,5}, {-8,11,-2,3}, {3,-1,5,-6},
    {4,6,11,8}, {-4,-11,-4,2}, {-4,-6,-1,-1}, {1,1,11,0}, {5,0,-2,14}, {2,2,6,-11},
    {-5,3,0,6}, {-3,-2,9,7}, {-5,-5,2,-4}, {-13,-3,4,-1}, {-6,3,-4,2}, {-11,-1,-5,2},
    {7,7,-2,-9}, {8,-3,8,2}, {4,-6,4,6}, {2,1,4,2}, {1,8,12,-5}, {-1,2,-8,6},
    {-4,-8,-3,-11}, {10,1,13,2}, {-12,-3,10,1}, {6,-7,0,4}, {5,9,-2,-2}, {10,13,12,15},
    {6,4,-8,-1}, {4,2,-6,6}, {-4,6,3,10}, {6,8,-2,0}, {-6,-1,-6,-3}, {7,10,-2,-9},
    {-4,2,0,3}, {-6,-4,-11,2}, {1,4,-4,-5}, {-1,-9,1,9}, {3,-2,2,6}, {-7,7,-3,11},
    {-3,-2,2,4}, {3,3,-7,-3}, {-5,-1,-3,5}, {5,-2,4,-9}, {6,2,-5,-15}, {7,-6,8,8},
    {3,-2,-8,1}, {5,-3,-9,-11}, {3,2,-2,8}, {2,-2,11,-5}, {-5,4,0,-4}, {6,1,0,3},
    {4,9,-4,9}, {-7,-2,2,3}, {7,-7,-4,9}, {-8,-4,3,-5}, {-3,5,6,-4}, {-3,-5,6,5},
    {-9,7,3,1}, {7,0,-1,-2}, {4,-3,-6,0}, {-7,1,2,-2}, {-2,0,-5,-8}, {3,1,-5,0},
    {1,1,2,-6}, {6,-5,-1,2}, {9,1,-3,-4}, {-2,-8,-11,-8}, {3,2,7,4}, {-7,-7,-5,-4},
    {9,0,2,-3}, {2,-2,-3,15}, {9,0,-6,-11}, {5,-4,5,-2}, {2,7,-6,-2}, {-5,-5,1,-3},
    {0,1,9,1}, {3,2,-1,0}, {-5,7,1,4}, {2,-4,-5,0}, {1,2,-7,-1}, {-7,-3,-5,-9},
    {11,2,-8,0}, {-6,12,2,-6}, {-4,-5,-14,-7}, {-5,3,-6,1}, {7,12,-6,8}, {-6,11,5,5},
    {-10,0,1,-3}, {4,0,1,5}, {-6,9,0,7}, {3,10,9,5}, {-8,-2,-1,-3}, {-3,-10,0,-5},
    {-4,3,1,1}, {1,-3,2,5}, {13,-2,4,-6}, {2,-12,-5,12}
}};

}  // namespace sslam
