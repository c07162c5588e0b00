#pragma once

#include "mrnmf/errors.hpp"
#include "mrnmf/feature_select.hpp"
#include "mrnmf/graph.hpp"
#include "mrnmf/kernel.hpp"
#include "mrnmf/matrix.hpp"
#include "mrnmf/matrix_io.hpp"
#include "mrnmf/multi_graph.hpp"
#include "mrnmf/multi_kernel.hpp"
#include "mrnmf/nmf.hpp"
#include "mrnmf/report.hpp"
#include "mrnmf/simplex_qp.hpp"
#include "mrnmf/synthetic.hpp"
