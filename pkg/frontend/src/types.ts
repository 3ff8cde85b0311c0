// Mirrors of the session service's JSON bodies.

export interface OutcomeScale {
  kind: string;
  sigma: number | null;
}

export interface ChipAllocation {
  lower: number;
  upper: number;
  nbins: number;
  chips: number[];
  total_chips: number;
}

export interface SessionResult {
  model: 'FixedEffect' | 'RandomEffects';
  prior: PriorJson | null;
}

export interface PriorJson {
  variant: string;
  params: Record<string, unknown>;
  scale: OutcomeScale;
  omega: number;
}

export interface AuditRecord {
  timestamp: string;
  judgment: Record<string, unknown>;
}

export type Stage = 'Stage1' | 'Stage2' | 'Stage3' | 'Finalized';

export interface SessionJson {
  id: string;
  scale: OutcomeScale;
  stage: Stage;
  certain_identical: boolean | null;
  r_max: number | null;
  r_min: number;
  chips: ChipAllocation | null;
  result: SessionResult | null;
  audit_log: AuditRecord[];
}

export interface SessionEnvelope {
  session: SessionJson;
  question: string | null;
}

export interface BandProbabilities {
  low: number;
  moderate: number;
  high: number;
  extreme: number;
}

export interface FeedbackBody {
  fit: Record<string, unknown> | null;
  bands: BandProbabilities;
  density: { bin_edges: number[]; density: number[] };
  tau_sample: number[];
  seed: number;
  n_draws: number;
}

export interface EffectSummary {
  median: number;
  lower: number;
  upper: number;
}

export interface TreatmentEffectJson {
  treatment: number;
  d: EffectSummary;
  odds_ratio: EffectSummary | null;
  predictive: EffectSummary | null;
  predictive_odds_ratio: EffectSummary | null;
}

export interface TauSummaryJson extends EffectSummary {
  bands: BandProbabilities;
}

export interface PosteriorSummaryJson {
  effect: 'FixedEffect' | 'RandomEffects';
  likelihood: 'BinomialLogit' | 'NormalIdentity';
  n_treatments: number;
  chains: number;
  keep: number;
  seed: number;
  omega: number;
  treatment_effects: Record<string, TreatmentEffectJson>;
  tau: TauSummaryJson | null;
  dic: { dbar: number; p_d: number; dic: number };
  total_resdev: number;
  diagnostics: {
    acceptance: Record<string, number>;
    psrf: Record<string, number> | null;
    warnings: string[] | null;
  };
}

export interface AnalysisStatusBody {
  run_id: string;
  status: 'queued' | 'running' | 'done' | 'failed';
  progress: number;
  result: { summary: PosteriorSummaryJson } | null;
  error: string | null;
}

export interface InterpretationRow {
  r: number;
  tau: number;
  tau_scaled: number;
}
