#pragma once

#include "conrel/config.hpp"
#include "conrel/corpus.hpp"
#include "conrel/csv.hpp"
#include "conrel/errors.hpp"
#include "conrel/filter.hpp"
#include "conrel/graph.hpp"
#include "conrel/grouping.hpp"
#include "conrel/normalize.hpp"
#include "conrel/pipeline.hpp"
#include "conrel/porter.hpp"
#include "conrel/profiles.hpp"
#include "conrel/relations.hpp"
#include "conrel/utf8.hpp"
#include "conrel/wordlists.hpp"
