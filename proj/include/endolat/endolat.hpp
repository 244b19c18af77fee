#pragma once

#include "endolat/errors.hpp"
#include "endolat/funcgraph.hpp"
#include "endolat/order.hpp"
#include "endolat/extension.hpp"
#include "endolat/lattice.hpp"
#include "endolat/oracle.hpp"
