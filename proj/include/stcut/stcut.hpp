#pragma once

#include "stcut/comm.hpp"
#include "stcut/comm_flow.hpp"
#include "stcut/context.hpp"
#include "stcut/drivers.hpp"
#include "stcut/edge_list_io.hpp"
#include "stcut/find_long_edge.hpp"
#include "stcut/flow.hpp"
#include "stcut/forest_packing.hpp"
#include "stcut/global_min_cut.hpp"
#include "stcut/graph.hpp"
#include "stcut/large_flow_cq.hpp"
#include "stcut/oracle.hpp"
#include "stcut/rsw.hpp"
#include "stcut/sparsifier.hpp"
#include "stcut/spectral.hpp"
#include "stcut/vertex_set.hpp"
#include "stcut/witness.hpp"
