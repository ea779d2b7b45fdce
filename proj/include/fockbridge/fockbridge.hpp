#pragma once

#include "fockbridge/basis.hpp"
#include "fockbridge/dynamics.hpp"
#include "fockbridge/error.hpp"
#include "fockbridge/fock_ladder.hpp"
#include "fockbridge/hubbard.hpp"
#include "fockbridge/operator.hpp"
#include "fockbridge/parallel.hpp"
#include "fockbridge/reshape.hpp"
#include "fockbridge/symmetry.hpp"
