import type { SessionJson, Stage } from './types';

export type SessionAction = 'stage1' | 'stage2' | 'chips' | 'finalize';

// Mirror of the service's stage machine: which endpoint each stage accepts.
// The wizard consults this before every POST/PUT so a conforming client can
// never draw a 409 from the service.
const ALLOWED: Record<Stage, SessionAction[]> = {
  Stage1: ['stage1'],
  Stage2: ['stage2'],
  Stage3: ['chips', 'finalize'],
  Finalized: [],
};

export function isAllowed(stage: Stage, action: SessionAction): boolean {
  return ALLOWED[stage].includes(action);
}

/**
 * Finalizing without declining additionally requires a chip allocation with
 * at least one chip placed; the service rejects it otherwise.
 */
export function canFinalize(session: SessionJson, decline: boolean): boolean {
  if (!isAllowed(session.stage, 'finalize')) return false;
  if (decline) return true;
  const placed = session.chips?.chips.reduce((a, b) => a + b, 0) ?? 0;
  return placed > 0;
}
