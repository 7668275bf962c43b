#pragma once

#include "adscreen/corpus_io.hpp"
#include "adscreen/csv.hpp"
#include "adscreen/error.hpp"
#include "adscreen/evaluation.hpp"
#include "adscreen/feature_selection.hpp"
#include "adscreen/learners.hpp"
#include "adscreen/lexical_metrics.hpp"
#include "adscreen/pipeline.hpp"
#include "adscreen/report.hpp"
#include "adscreen/text_analysis.hpp"
#include "adscreen/vectorizer.hpp"
