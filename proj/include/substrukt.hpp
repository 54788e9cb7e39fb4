#pragma once

#include "substrukt/syntax.hpp"
#include "substrukt/sequents.hpp"
#include "substrukt/calculus.hpp"
#include "substrukt/algebra.hpp"
#include "substrukt/enumerate.hpp"
#include "substrukt/bridge.hpp"
#include "substrukt/search.hpp"
#include "substrukt/completion.hpp"
#include "substrukt/hilbert.hpp"
#include "substrukt/fixtures.hpp"
#include "substrukt/random.hpp"
