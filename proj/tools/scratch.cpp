#include "uavloc/geometry.hpp"
int main(){ return uavloc::gen_uav_trajectory({}).spots.size()==100?0:1; }
