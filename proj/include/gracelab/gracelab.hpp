#ifndef GRACELAB_GRACELAB_HPP
#define GRACELAB_GRACELAB_HPP

#include "gracelab/cli.hpp"
#include "gracelab/construct.hpp"
#include "gracelab/errors.hpp"
#include "gracelab/graph.hpp"
#include "gracelab/io.hpp"
#include "gracelab/labelling.hpp"
#include "gracelab/search.hpp"

#endif  // GRACELAB_GRACELAB_HPP
