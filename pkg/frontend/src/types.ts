// Payload shapes of the annotation service. The UI is a pure client:
// it renders what the service sends and posts labels back, nothing else.

export type DiffOp = "equal" | "insert" | "delete" | "replace";

export interface DiffSpan {
  op: DiffOp;
  a0: number;
  a1: number;
  b0: number;
  b1: number;
}

export interface Task {
  done: boolean;
  record_id: string | null;
  round: number;
  pool_size: number;
  completed: number;
  original: string | null;
  repaired: string | null;
  compiled: boolean | null;
  sp_suggest: string | null;
  lp_suggest: string | null;
  diff_spans: DiffSpan[];
}

export interface AnnotationPayload {
  record_id: string;
  annotator_id: string;
  sp: 0 | 1;
  lp: 0 | 1;
  round: number;
  comment?: string;
}

export interface AnnotationAck {
  record_id: string;
  annotator_id: string;
  sp: number;
  lp: number;
  round: number;
  noted_at: string;
}

export interface PairAgreement {
  annotator_a: string;
  annotator_b: string;
  n_items: number;
  sp_kappa: number | null;
  lp_kappa: number | null;
}

export interface Agreement {
  round: number;
  kind: string;
  calibration_fraction: number;
  threshold: number;
  pairs: PairAgreement[];
  gate_passed: boolean;
}

export interface RecordDetail {
  record_id: string;
  submission_id: string;
  agent_id: string;
  context: string;
  original: string | null;
  repaired: string | null;
  compiled: boolean;
  failure: string | null;
  metrics: Record<string, unknown> | null;
  annotations: AnnotationAck[];
}
