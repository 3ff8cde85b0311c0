// State machine conformance: the wizard's transition table mirrors the
// service's, and scripted walkthroughs of all four elicitation endpoints
// never draw a 409.
import { describe, expect, inject, it } from 'vitest';

import { ApiError, ServiceClient } from '../src/api';
import { canFinalize, isAllowed, SessionAction } from '../src/transitions';
import type { SessionJson, Stage } from '../src/types';

const client = new ServiceClient(inject('serviceUrl'));

const TA163_CHIPS = {
  lower: 1,
  upper: 10,
  nbins: 9,
  chips: [4, 5, 6, 6, 5, 4, 2, 1, 1],
  total_chips: 34,
};

async function sessionAtStage(stage: Stage): Promise<SessionJson> {
  let env = await client.createSession('LogOR');
  const id = env.session.id;
  if (stage === 'Stage1') return env.session;
  env = await client.postStage1(id, false);
  if (stage === 'Stage2') return env.session;
  env = await client.postStage2(id, 10.0);
  if (stage === 'Stage3') return env.session;
  await client.putChips(id, TA163_CHIPS);
  env = await client.finalize(id, false);
  return env.session;
}

function attempt(id: string, action: SessionAction) {
  switch (action) {
    case 'stage1':
      return client.postStage1(id, false);
    case 'stage2':
      return client.postStage2(id, 10.0);
    case 'chips':
      return client.putChips(id, TA163_CHIPS);
    case 'finalize':
      return client.finalize(id, false);
  }
}

describe('walkthroughs never elicit a 409', () => {
  it('stage 1 certain: straight to a fixed-effect recommendation', async () => {
    const env = await client.createSession('LogOR');
    const done = await client.postStage1(env.session.id, true);
    expect(done.session.stage).toBe('Finalized');
    expect(done.session.result).toEqual({ model: 'FixedEffect', prior: null });
  });

  it('stage 2 declined: empirical default prior', async () => {
    const env = await client.createSession('LogOR');
    await client.postStage1(env.session.id, false);
    const done = await client.postStage2(env.session.id, null);
    expect(done.session.stage).toBe('Finalized');
    expect(done.session.result?.prior?.variant).toBe('LogNormalTauSq');
  });

  it('stage 3 declined: truncated default prior', async () => {
    const env = await client.createSession('LogOR');
    await client.postStage1(env.session.id, false);
    await client.postStage2(env.session.id, 10.0);
    const done = await client.finalize(env.session.id, true);
    expect(done.session.result?.prior?.variant).toBe('TruncatedLogNormalTauSq');
  });

  it('full chip path: elicited ratio prior', async () => {
    const env = await client.createSession('LogOR');
    await client.postStage1(env.session.id, false);
    await client.postStage2(env.session.id, 10.0);
    await client.putChips(env.session.id, TA163_CHIPS);
    const feedback = await client.getFeedback(env.session.id);
    expect(feedback.fit).not.toBeNull();
    const done = await client.finalize(env.session.id, false);
    expect(done.session.stage).toBe('Finalized');
    expect(done.session.result?.prior?.variant).toBe('ElicitedRatio');
  });
});

describe('mirrored transition table', () => {
  const actions: SessionAction[] = ['stage1', 'stage2', 'chips', 'finalize'];
  const stages: Stage[] = ['Stage1', 'Stage2', 'Stage3', 'Finalized'];

  for (const stage of stages) {
    for (const action of actions) {
      it(`${stage} / ${action}: mirror agrees with the service`, async () => {
        const session = await sessionAtStage(stage);
        if (isAllowed(stage, action)) {
          if (action === 'finalize') {
            // finalize also needs placed chips; canFinalize gates that in-UI
            await client.putChips(session.id, TA163_CHIPS);
          }
          await attempt(session.id, action); // must not throw
        } else {
          const err = await attempt(session.id, action).then(
            () => null,
            (e) => e,
          );
          expect(err).toBeInstanceOf(ApiError);
          expect((err as ApiError).status).toBe(409);
        }
      });
    }
  }

  it('finalize without chips is blocked in-UI exactly where the service 409s', async () => {
    const session = await sessionAtStage('Stage3');
    expect(canFinalize(session, false)).toBe(false);
    expect(canFinalize(session, true)).toBe(true);
    const err = await client.finalize(session.id, false).then(
      () => null,
      (e) => e,
    );
    expect((err as ApiError).status).toBe(409);

    const withChips = await client.putChips(session.id, TA163_CHIPS);
    expect(canFinalize(withChips.session, false)).toBe(true);
    const done = await client.finalize(session.id, false);
    expect(done.session.stage).toBe('Finalized');
  });
});
