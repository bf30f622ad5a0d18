#pragma once

#include "bcr/canonical.hpp"
#include "bcr/chord.hpp"
#include "bcr/complex.hpp"
#include "bcr/error.hpp"
#include "bcr/graph.hpp"
#include "bcr/graph_vector.hpp"
#include "bcr/io.hpp"
#include "bcr/normalize.hpp"
#include "bcr/parallel.hpp"
#include "bcr/rational.hpp"
#include "bcr/report.hpp"
#include "bcr/sparse_matrix.hpp"
