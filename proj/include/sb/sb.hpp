#pragma once

#include "sb/chains.hpp"
#include "sb/decompose.hpp"
#include "sb/document.hpp"
#include "sb/embed.hpp"
#include "sb/generate.hpp"
#include "sb/instance.hpp"
#include "sb/inverses.hpp"
#include "sb/witness.hpp"
