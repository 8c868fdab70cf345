package headfirst.state;

public class HasQuarterState implements State {
    private final GumballMachine gumballMachine;

    public HasQuarterState(GumballMachine gumballMachine) {
        this.gumballMachine = gumballMachine;
    }

    @Override
    public void insertQuarter() {
        System.out.println("You can't insert another quarter");
    }

    @Override
    public void ejectQuarter() {
        System.out.println("ejecting");
    }

    @Override
    public void turnCrank() {
        gumballMachine.setState(gumballMachine.getSoldState());
    }

    @Override
    public void dispense() {
        gumballMachine.releaseBall();
    }
}
