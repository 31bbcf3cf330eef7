#pragma once

#include "eog/bounds.hpp"
#include "eog/containment.hpp"
#include "eog/driver.hpp"
#include "eog/exmax.hpp"
#include "eog/graph.hpp"
#include "eog/increment.hpp"
#include "eog/interval_cover.hpp"
#include "eog/io.hpp"
#include "eog/isomorphism.hpp"
#include "eog/nice_embedding.hpp"
#include "eog/pattern.hpp"
#include "eog/report.hpp"
#include "eog/weights.hpp"
